#pragma once

#include "polypack/metrics.hpp"

#include <iosfwd>

namespace polypack {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// Text documents: `polytope` (dim + vertices), `semitoric` (2D polygon as
// vertices or halfspaces, cut lines, optional heights), `ingredients`
// (semitoric data plus Taylor truncations).  Exact rationals throughout;
// serialization is canonical so round-trips are bit-exact.
struct Document {
  enum Kind { Polytope, Semitoric, Ingredients } kind = Polytope;
  std::string name;
  int dim = 2;
  ConvexPolytope body;
  std::vector<CutLine> cuts;
  std::optional<SemitoricHeights> heights;
  std::vector<TaylorTruncation> taylor;
};

Document parse_document(std::istream& in);
Document parse_document_string(const std::string& text);
Document load_document(const std::string& path);
std::string serialize_document(const Document& doc);
void save_document(const Document& doc, const std::string& path);

Document document_from_polytope(const ConvexPolytope& body, std::string name = "");
Document document_from_semitoric(const PrimitiveSemitoricPolygon& p,
                                 const std::optional<SemitoricHeights>& h, std::string name = "");

}  // namespace polypack
