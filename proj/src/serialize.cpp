#include "fcalc/serialize.hpp"

namespace fcalc {

namespace {

std::size_t idx(int n) { return static_cast<std::size_t>(n); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

// Counts arrive as numbers or as decimal strings.
long integer_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  try {
    if (v.is_number_integer()) return v.get<long>();
    if (v.is_string()) {
      std::size_t used = 0;
      long x = std::stol(v.get<std::string>(), &used);
      if (used == v.get<std::string>().size()) return x;
    }
  } catch (const std::exception&) {
  }
  throw InputError(std::string("field '") + key + "' must be an integer");
}

std::size_t count_field(const Json& j, const char* key) {
  long v = integer_field(j, key);
  if (v < 0) throw InputError(std::string("field '") + key + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

Scalar scalar_from_json(const Json& v) {
  if (v.is_number_integer()) return Scalar(v.get<long>());
  if (v.is_string()) {
    Scalar s;
    if (s.set_str(v.get<std::string>(), 10) == 0 && s.get_den() != 0) {
      s.canonicalize();
      return s;
    }
  }
  throw InputError("matrix entry " + v.dump() + " is not an integer or fraction");
}

Mat rels_from_json(const Json& j, const Coeff& c, std::size_t gens) {
  auto it = j.find("rels");
  if (it == j.end()) return Mat(0, gens);
  if (!it->is_array()) throw InputError("'rels' must be a list of rows");
  return mat_from_json(*it, c, it->size(), gens);
}

}  // namespace

Json to_json(const Mat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).get_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const Json& j, const Coeff& c, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) throw InputError("a matrix must be a list of rows");
  // a matrix with no rows or no columns may be written as []
  if (j.empty() && (rows == 0 || cols == 0)) return Mat(rows, cols);
  if (j.size() != rows) throw InputError("expected " + std::to_string(rows) + " matrix rows, got " + std::to_string(j.size()));
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw InputError("matrix row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = scalar_from_json(j[i][k]);
  }
  return reduce(c, m);
}

Json to_json(const PresentedModule& m) {
  Json j;
  j["coeff"] = m.coeff().name();
  j["gens"] = std::to_string(m.gens());
  j["rels"] = to_json(m.rels());
  return j;
}

PresentedModule module_from_json(const Json& j) {
  Coeff c = Coeff::parse(field(j, "coeff").get<std::string>());
  std::size_t g = count_field(j, "gens");
  return PresentedModule(c, g, rels_from_json(j, c, g));
}

Json to_json(const ModuleMap& f) {
  Json j;
  j["mat"] = to_json(f.mat());
  return j;
}

Json to_json(const TruncFIModule& F) {
  Json j;
  j["coeff"] = F.coeff().name();
  j["N"] = std::to_string(F.N());
  Json levels = Json::array(), incl = Json::array(), sym = Json::array();
  for (int n = 0; n <= F.N(); ++n) {
    levels.push_back({{"gens", std::to_string(F.level(n).gens())}, {"rels", to_json(F.level(n).rels())}});
    Json s = Json::array();
    for (int i = 0; i + 1 < n; ++i) s.push_back(to_json(F.sym(n, i).mat()));
    sym.push_back(std::move(s));
    if (n < F.N()) incl.push_back(to_json(F.incl(n).mat()));
  }
  j["levels"] = std::move(levels);
  j["incl"] = std::move(incl);
  j["sym"] = std::move(sym);
  return j;
}

TruncFIModule fi_from_json(const Json& j) {
  if (!field(j, "coeff").is_string()) throw InputError("'coeff' must be a string");
  Coeff c = Coeff::parse(field(j, "coeff").get<std::string>());
  long N = integer_field(j, "N");
  if (N < 0) throw InputError("'N' must be non-negative");
  const Json& jl = field(j, "levels");
  const Json& ji = field(j, "incl");
  const Json& js = field(j, "sym");
  if (!jl.is_array() || jl.size() != idx(N + 1)) throw InputError("'levels' must list N + 1 levels");
  if (!ji.is_array() || ji.size() != idx(N)) throw InputError("'incl' must list N matrices");
  if (!js.is_array() || js.size() != idx(N + 1)) throw InputError("'sym' must list N + 1 families");
  std::vector<PresentedModule> levels;
  for (int n = 0; n <= N; ++n) {
    std::size_t g = count_field(jl[idx(n)], "gens");
    levels.emplace_back(c, g, rels_from_json(jl[idx(n)], c, g));
  }
  std::vector<ModuleMap> incl;
  for (int n = 0; n < N; ++n)
    incl.emplace_back(levels[idx(n)], levels[idx(n + 1)],
                      mat_from_json(ji[idx(n)], c, levels[idx(n)].gens(), levels[idx(n + 1)].gens()));
  std::vector<std::vector<ModuleMap>> sym(idx(N + 1));
  for (int n = 0; n <= N; ++n) {
    const Json& fam = js[idx(n)];
    const std::size_t want = idx(std::max(n - 1, 0));
    if (!fam.is_array() || fam.size() != want)
      throw InputError("'sym' at level " + std::to_string(n) + " must list " + std::to_string(want) + " matrices");
    const std::size_t g = levels[idx(n)].gens();
    for (const auto& m : fam) sym[idx(n)].emplace_back(levels[idx(n)], levels[idx(n)], mat_from_json(m, c, g, g));
  }
  return TruncFIModule(c, static_cast<int>(N), std::move(levels), std::move(incl), std::move(sym));
}

Json to_json(const FISharpModule& F) {
  Json j = to_json(F.base());
  Json proj = Json::array();
  for (const auto& p : F.projs()) proj.push_back(to_json(p.mat()));
  j["proj"] = std::move(proj);
  return j;
}

FISharpModule sharp_from_json(const Json& j) {
  TruncFIModule base = fi_from_json(j);
  const Json& jp = field(j, "proj");
  if (!jp.is_array() || jp.size() != idx(base.N())) throw InputError("'proj' must list N matrices");
  std::vector<ModuleMap> proj;
  for (int n = 0; n < base.N(); ++n)
    proj.emplace_back(base.level(n + 1), base.level(n),
                      mat_from_json(jp[idx(n)], base.coeff(), base.level(n + 1).gens(), base.level(n).gens()));
  return FISharpModule(std::move(base), std::move(proj));
}

Json to_json(const SymRepList& reps) {
  Json j;
  j["coeff"] = reps.empty() ? std::string("Z") : reps.front().module.coeff().name();
  Json arr = Json::array();
  for (const auto& r : reps) {
    Json s = Json::array();
    for (const auto& m : r.sym) s.push_back(to_json(m.mat()));
    arr.push_back({{"gens", std::to_string(r.module.gens())}, {"rels", to_json(r.module.rels())}, {"sym", std::move(s)}});
  }
  j["reps"] = std::move(arr);
  return j;
}

SymRepList reps_from_json(const Json& j) {
  Coeff c = Coeff::parse(field(j, "coeff").get<std::string>());
  const Json& arr = field(j, "reps");
  if (!arr.is_array()) throw InputError("'reps' must be a list");
  SymRepList out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    std::size_t g = count_field(arr[k], "gens");
    SymRep r{static_cast<int>(k), PresentedModule(c, g, rels_from_json(arr[k], c, g)), {}};
    const Json& s = field(arr[k], "sym");
    const std::size_t want = k == 0 ? 0 : k - 1;
    if (!s.is_array() || s.size() != want)
      throw InputError("rep " + std::to_string(k) + " needs " + std::to_string(want) + " transposition matrices");
    for (const auto& m : s) r.sym.emplace_back(r.module, r.module, mat_from_json(m, c, g, g));
    if (auto v = r.violation()) throw InputError("rep " + std::to_string(k) + ": " + *v);
    out.push_back(std::move(r));
  }
  return out;
}

Json to_json(const TildeHomSet& h) {
  Json j;
  j["cat"] = to_string(h.cat);
  j["a"] = std::to_string(h.a);
  j["b"] = std::to_string(h.b);
  Json classes = Json::array();
  for (const auto& f : h.classes) {
    Json dom = Json::array(), val = Json::array();
    for (int i : f.normal.domain()) {
      dom.push_back(std::to_string(i));
      val.push_back(std::to_string(f.normal.images[idx(i)]));
    }
    classes.push_back({{"domain", std::move(dom)}, {"values", std::move(val)}});
  }
  j["classes"] = std::move(classes);
  return j;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

}  // namespace fcalc
