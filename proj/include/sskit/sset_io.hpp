#pragma once

// Text interchange for complexes:
//
//   sset <top_dim>            (or: ssset <top_dim> for semisimplicial input)
//   dim <n> <count>
//   face <n> <index> <d_0> ... <d_n>      (n >= 1)
//   degen <n> <index> <s_0> ... <s_n>     (sset only, n < top_dim)
//
// Dimensions appear in increasing order; within a dimension, face and degen
// lines appear in index order. '#' starts a comment.

#include <iosfwd>
#include <string>
#include <variant>

#include "sskit/sset.hpp"

namespace sskit {

using AnyComplex = std::variant<SemiSimplicialComplex, SimplicialSet>;

void write_complex(std::ostream& os, const SemiSimplicialComplex& x);
void write_complex(std::ostream& os, const SimplicialSet& x);
std::string to_text(const AnyComplex& x);

/// Strict parser; throws ParseError naming the offending line.
AnyComplex parse_complex(std::istream& is);
AnyComplex parse_complex_text(const std::string& text);
AnyComplex load_complex(const std::string& path);

const SemiSimplicialComplex& faces_of(const AnyComplex& x);
ValidationReport validate(const AnyComplex& x);

}  // namespace sskit
