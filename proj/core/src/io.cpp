#include "polypack/io.hpp"

#include <fstream>
#include <sstream>

namespace polypack {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

Rat parse_rat_at(const std::string& tok, int line) {
  try {
    return parse_rat(tok);
  } catch (const std::exception& e) {
    throw ParseError(line, e.what());
  }
}

}  // namespace

Document parse_document(std::istream& in) {
  Document doc;
  std::string line;
  int lineno = 0;
  bool have_kind = false;
  enum Block { None, Vertices, Halfspaces, Heights, Taylor } block = None;
  std::vector<QVec> vertices;
  std::vector<HalfSpace> halfspaces;
  std::vector<Rat> heights;
  TaylorTruncation* cur_taylor = nullptr;

  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!have_kind) {
      if (t == "polytope") doc.kind = Document::Polytope;
      else if (t == "semitoric") doc.kind = Document::Semitoric;
      else if (t == "ingredients") doc.kind = Document::Ingredients;
      else throw ParseError(lineno, "expected document kind (polytope/semitoric/ingredients)");
      have_kind = true;
      continue;
    }
    auto colon = t.find(':');
    std::string key = colon == std::string::npos ? "" : trim(t.substr(0, colon));
    std::string val = colon == std::string::npos ? "" : trim(t.substr(colon + 1));

    if (key == "name") {
      doc.name = val;
      block = None;
    } else if (key == "dim") {
      doc.dim = std::stoi(val);
      if (doc.dim < 1 || doc.dim > 3) throw ParseError(lineno, "dim must be 1, 2 or 3");
      block = None;
    } else if (key == "vertices" && val.empty()) {
      block = Vertices;
    } else if (key == "halfspaces" && val.empty()) {
      block = Halfspaces;
    } else if (key == "heights" && val.empty()) {
      block = Heights;
    } else if (key == "taylor" && val.empty()) {
      doc.taylor.emplace_back();
      cur_taylor = &doc.taylor.back();
      block = Taylor;
    } else if (key == "cut") {
      auto toks = split_ws(val);
      if (toks.size() != 3) throw ParseError(lineno, "cut needs: lambda epsilon k");
      CutLine c;
      c.lambda = parse_rat_at(toks[0], lineno);
      if (toks[1] == "+1" || toks[1] == "1") c.epsilon = 1;
      else if (toks[1] == "-1") c.epsilon = -1;
      else throw ParseError(lineno, "cut epsilon must be +1 or -1");
      try {
        c.k = std::stoll(toks[2]);
      } catch (...) {
        throw ParseError(lineno, "cut twisting index must be an integer");
      }
      doc.cuts.push_back(std::move(c));
      block = None;
    } else if (key == "degree" && block == Taylor) {
      cur_taylor->degree = std::stoi(val);
    } else if (key == "coeff" && block == Taylor) {
      auto toks = split_ws(val);
      if (toks.size() != 3) throw ParseError(lineno, "coeff needs: i j value");
      int i, j;
      try {
        i = std::stoi(toks[0]);
        j = std::stoi(toks[1]);
      } catch (...) {
        throw ParseError(lineno, "coeff indices must be integers");
      }
      try {
        cur_taylor->coeffs[{i, j}] = parse_pilin(toks[2]);
      } catch (const std::exception& e) {
        throw ParseError(lineno, e.what());
      }
    } else if (block == Vertices) {
      auto toks = split_ws(t);
      QVec v;
      for (const auto& tok : toks) v.push_back(parse_rat_at(tok, lineno));
      vertices.push_back(std::move(v));
    } else if (block == Halfspaces) {
      auto toks = split_ws(t);
      if ((int)toks.size() != doc.dim + 1)
        throw ParseError(lineno, "halfspace needs dim normal entries plus offset");
      HalfSpace h;
      for (int i = 0; i < doc.dim; ++i) {
        Rat r = parse_rat_at(toks[i], lineno);
        if (denominator(r) != 1) throw ParseError(lineno, "halfspace normals must be integers");
        h.normal.push_back(numerator(r));
      }
      h.offset = parse_rat_at(toks[doc.dim], lineno);
      halfspaces.push_back(std::move(h));
    } else if (block == Heights) {
      heights.push_back(parse_rat_at(t, lineno));
    } else {
      throw ParseError(lineno, "unrecognized line '" + t + "'");
    }
  }
  if (!have_kind) throw ParseError(lineno, "empty document");

  for (const auto& v : vertices)
    if ((int)v.size() != doc.dim) throw ParseError(lineno, "vertex arity does not match dim");
  if (doc.kind != Document::Polytope && doc.dim != 2)
    throw ParseError(lineno, "semitoric documents are 2-dimensional");
  if (!vertices.empty() && !halfspaces.empty())
    throw ParseError(lineno, "give either vertices or halfspaces, not both");
  if (!vertices.empty()) doc.body = polytope_from_vertices(doc.dim, vertices);
  else if (!halfspaces.empty()) doc.body = polytope_from_halfspaces(doc.dim, halfspaces);
  else throw ParseError(lineno, "no polygon data");
  if (!heights.empty()) doc.heights = SemitoricHeights{heights};
  if (doc.kind == Document::Polytope && !doc.cuts.empty())
    throw ParseError(lineno, "polytope documents carry no cuts");
  return doc;
}

Document parse_document_string(const std::string& text) {
  std::istringstream is(text);
  return parse_document(is);
}

Document load_document(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  return parse_document(f);
}

std::string serialize_document(const Document& doc) {
  std::ostringstream os;
  switch (doc.kind) {
    case Document::Polytope: os << "polytope\n"; break;
    case Document::Semitoric: os << "semitoric\n"; break;
    case Document::Ingredients: os << "ingredients\n"; break;
  }
  if (!doc.name.empty()) os << "name: " << doc.name << "\n";
  os << "dim: " << doc.dim << "\n";
  if (doc.body.bounded) {
    os << "vertices:\n";
    for (const auto& v : doc.body.vertices) {
      for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << format_rat(v[i]);
      os << "\n";
    }
  } else {
    std::vector<std::pair<IVec, Rat>> hs;
    for (const auto& f : doc.body.facets) hs.push_back({f.normal, f.offset});
    std::sort(hs.begin(), hs.end());
    os << "halfspaces:\n";
    for (const auto& [n, c] : hs) {
      for (size_t i = 0; i < n.size(); ++i) os << (i ? " " : "") << n[i];
      os << " " << format_rat(c) << "\n";
    }
  }
  for (const auto& c : doc.cuts)
    os << "cut: " << format_rat(c.lambda) << " " << (c.epsilon > 0 ? "+1" : "-1") << " " << c.k
       << "\n";
  if (doc.heights) {
    os << "heights:\n";
    for (const auto& h : doc.heights->h) os << format_rat(h) << "\n";
  }
  for (const auto& t : doc.taylor) {
    os << "taylor:\n";
    os << "degree: " << t.degree << "\n";
    for (const auto& [ij, c] : t.coeffs)
      os << "coeff: " << ij.first << " " << ij.second << " " << format_pilin(c) << "\n";
  }
  return os.str();
}

void save_document(const Document& doc, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << serialize_document(doc);
}

Document document_from_polytope(const ConvexPolytope& body, std::string name) {
  Document d;
  d.kind = Document::Polytope;
  d.name = std::move(name);
  d.dim = body.dim;
  d.body = body;
  return d;
}

Document document_from_semitoric(const PrimitiveSemitoricPolygon& p,
                                 const std::optional<SemitoricHeights>& h, std::string name) {
  Document d;
  d.kind = Document::Semitoric;
  d.name = std::move(name);
  d.dim = 2;
  d.body = p.polygon;
  d.cuts = p.cuts;
  d.heights = h;
  return d;
}

}  // namespace polypack
