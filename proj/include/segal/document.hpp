#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "segal/bisimplicial.hpp"
#include "segal/category.hpp"
#include "segal/presheaf.hpp"
#include "segal/simplicial_set.hpp"

namespace segal {

// Line-oriented text format, version 1.
//
//   segal 1
//   simplicial | bisimplicial | category | presheaf
//
// simplicial:    truncation N exact|inexact
//                coskeletal C
//                cell ID DIM [: FACE...]            faces d_0..d_DIM
// bisimplicial:  htruncation / vtruncation N exact|inexact
//                hcoskeletal C
//                cell ID P Q [: HFACE... | VFACE...]
// category:      object ID
//                morphism ID : SRC -> DST
//                compose G F = H                    H may be id:OBJ
// presheaf:      index, then category lines
//                section OBJ, then simplicial lines
//                restriction MOR, then lines  image CELL REF
//
// A face reference is ID, optionally followed by a strictly decreasing
// degeneracy word: ID@2,0 (simplicial) or ID@h1@v0 (bisimplicial).
// Identifiers use [A-Za-z0-9_.'+*^~-]. '#' starts a comment. Canonical
// form lists cells by (dimension, identifier).

enum class DocumentKind { simplicial, bisimplicial, category, presheaf };
std::string to_string(DocumentKind k);

struct Document {
  DocumentKind kind = DocumentKind::simplicial;
  SSetPtr simplicial;
  BSetPtr bisimplicial;
  std::shared_ptr<const FiniteCategory> category;
  std::shared_ptr<const SSetPresheaf> presheaf;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Throws ParseError.
Document parse_document(std::string_view text);

/// Cell identifiers are the labels when every label is a valid identifier
/// and labels are unique, generated names otherwise.
std::string serialize(const SimplicialSet& x);
std::string serialize(const BisimplicialSet& x);
std::string serialize(const FiniteCategory& c);
std::string serialize(const SSetPresheaf& p);
std::string serialize(const Document& d);

/// serialize(parse_document(text)).
std::string canonical(std::string_view text);

}  // namespace segal
