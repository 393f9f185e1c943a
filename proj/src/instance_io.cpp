#include "liemm/instance_io.hpp"

#include <fstream>
#include <map>

namespace liemm {

namespace {

Rational parse_rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw std::invalid_argument("expected rational as string or integer, got " + j.dump());
}

template <class T>
std::vector<T> parse_list(const json& j, const char* key, T (*f)(const json&)) {
  std::vector<T> out;
  if (!j.contains(key)) throw std::invalid_argument(std::string("instance missing list ") + key);
  for (const auto& e : j.at(key)) out.push_back(f(e));
  return out;
}

int parse_index(const json& j) { return j.get<int>(); }

}  // namespace

GaussRational parse_scalar(const json& j) {
  if (j.is_object()) {
    Rational re = j.contains("re") ? parse_rational(j.at("re")) : Rational(0);
    Rational im = j.contains("im") ? parse_rational(j.at("im")) : Rational(0);
    return {re, im};
  }
  return GaussRational(parse_rational(j));
}

json scalar_json(const Rational& r) { return r.str(); }

json scalar_json(const GaussRational& z) {
  if (z.is_real()) return z.re.str();
  return json{{"re", z.re.str()}, {"im", z.im.str()}};
}

EpsLaurent parse_series(const json& j) {
  int hi = j.contains("hi") ? j.at("hi").get<int>() : EpsLaurent::kExact;
  std::map<int, GaussRational> terms;
  if (j.contains("terms"))
    for (const auto& [k, v] : j.at("terms").items()) terms[std::stoi(k)] = parse_scalar(v);
  if (terms.empty()) return hi >= EpsLaurent::kExact ? EpsLaurent() : EpsLaurent::zero_through(hi);
  int lo = terms.begin()->first, top = terms.rbegin()->first;
  if (top > hi) throw std::invalid_argument("series term beyond its window");
  std::vector<GaussRational> c(static_cast<std::size_t>(top - lo + 1));
  for (const auto& [e, v] : terms) c[static_cast<std::size_t>(e - lo)] = v;
  return EpsLaurent(lo, std::move(c), hi);
}

json series_json(const EpsLaurent& s) {
  json j;
  if (!s.is_exact()) j["hi"] = s.hi();
  json t = json::object();
  const auto& c = s.raw_coeffs();
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!c[k].is_zero()) t[std::to_string(s.lo() + static_cast<int>(k))] = scalar_json(c[k]);
  j["terms"] = t;
  return j;
}

Mat<GaussRational> parse_matrix(const json& j) {
  std::size_t r = j.size(), c = r ? j.at(0).size() : 0;
  Mat<GaussRational> m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (j.at(i).size() != c) throw std::invalid_argument("ragged matrix in instance");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = parse_scalar(j.at(i).at(k));
  }
  return m;
}

json matrix_json(const Mat<GaussRational>& m) {
  json j = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(scalar_json(m(i, k)));
    j.push_back(row);
  }
  return j;
}

json matrix_json(const Mat<Rational>& m) {
  return matrix_json(m.map([](const Rational& x) { return GaussRational(x); }));
}

SeriesMat parse_family(const json& j) {
  int order = j.contains("order") ? j.at("order").get<int>() : EpsLaurent::kExact;
  const json& e = j.at("entries");
  std::size_t r = e.size(), c = r ? e.at(0).size() : 0;
  SeriesMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < c; ++k) {
      const json& x = e.at(i).at(k);
      if (x.is_object() && x.contains("terms")) {
        m(i, k) = parse_series(x);
      } else if (x.is_object() && !x.contains("re") && !x.contains("im")) {
        json s{{"terms", x}};
        if (order < EpsLaurent::kExact) s["hi"] = order;
        m(i, k) = parse_series(s);
      } else {
        EpsLaurent v(parse_scalar(x));
        m(i, k) = order < EpsLaurent::kExact ? v.truncate(order) : v;
      }
    }
  return m;
}

json family_json(const SeriesMat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(series_json(m(i, k)));
    rows.push_back(row);
  }
  return json{{"entries", rows}};
}

Instance parse_instance(const json& j) {
  Instance inst;
  const json& g = j.at("group");
  std::string kind = g.at("kind").get<std::string>();
  if (j.contains("property")) inst.property = j.at("property").get<std::string>();
  if (inst.property != "tpp" && inst.property != "dpp") throw std::invalid_argument("unknown property " + inst.property);
  if (j.contains("order")) inst.order = j.at("order").get<int>();
  if (kind == "cyclic" || kind == "abelian" || kind == "table") {
    inst.kind = GroupKind::Table;
    if (kind == "cyclic")
      inst.table = TableGroup::cyclic(g.at("order").get<int>());
    else if (kind == "abelian")
      inst.table = TableGroup::abelian(g.at("orders").get<std::vector<int>>());
    else
      inst.table = TableGroup(g.at("table").get<std::vector<std::vector<int>>>());
    inst.Xt = parse_list<int>(j, "X", parse_index);
    if (inst.property == "tpp") inst.Yt = parse_list<int>(j, "Y", parse_index);
    inst.Zt = parse_list<int>(j, "Z", parse_index);
  } else if (kind == "matrix") {
    inst.kind = GroupKind::Matrix;
    inst.dim = g.at("dim").get<std::size_t>();
    inst.Xm = parse_list<Mat<GaussRational>>(j, "X", parse_matrix);
    if (inst.property == "tpp") inst.Ym = parse_list<Mat<GaussRational>>(j, "Y", parse_matrix);
    inst.Zm = parse_list<Mat<GaussRational>>(j, "Z", parse_matrix);
  } else if (kind == "family") {
    inst.kind = GroupKind::Family;
    inst.dim = g.at("dim").get<std::size_t>();
    inst.Xf = parse_list<SeriesMat>(j, "X", parse_family);
    if (inst.property == "tpp") inst.Yf = parse_list<SeriesMat>(j, "Y", parse_family);
    inst.Zf = parse_list<SeriesMat>(j, "Z", parse_family);
  } else {
    throw std::invalid_argument("unknown group kind " + kind);
  }
  auto check_dim = [&](std::size_t r, std::size_t c) {
    if (r != inst.dim || c != inst.dim) throw std::invalid_argument("element dimension differs from group dim");
  };
  for (const auto* v : {&inst.Xm, &inst.Ym, &inst.Zm})
    for (const auto& m : *v) check_dim(m.rows(), m.cols());
  for (const auto* v : {&inst.Xf, &inst.Yf, &inst.Zf})
    for (const auto& m : *v) check_dim(m.rows(), m.cols());
  return inst;
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("malformed instance JSON: " + std::string(e.what()));
  }
  return parse_instance(j);
}

json instance_json(const Instance& inst) {
  json j;
  j["property"] = inst.property;
  if (inst.order) j["order"] = inst.order;
  switch (inst.kind) {
    case GroupKind::Table:
      j["group"] = {{"kind", "table"}, {"table", inst.table->table()}};
      j["X"] = inst.Xt;
      if (inst.property == "tpp") j["Y"] = inst.Yt;
      j["Z"] = inst.Zt;
      break;
    case GroupKind::Matrix: {
      j["group"] = {{"kind", "matrix"}, {"dim", inst.dim}};
      auto dump = [](const std::vector<Mat<GaussRational>>& v) {
        json a = json::array();
        for (const auto& m : v) a.push_back(matrix_json(m));
        return a;
      };
      j["X"] = dump(inst.Xm);
      if (inst.property == "tpp") j["Y"] = dump(inst.Ym);
      j["Z"] = dump(inst.Zm);
      break;
    }
    case GroupKind::Family: {
      j["group"] = {{"kind", "family"}, {"dim", inst.dim}};
      auto dump = [](const std::vector<SeriesMat>& v) {
        json a = json::array();
        for (const auto& m : v) a.push_back(family_json(m));
        return a;
      };
      j["X"] = dump(inst.Xf);
      if (inst.property == "tpp") j["Y"] = dump(inst.Yf);
      j["Z"] = dump(inst.Zf);
      break;
    }
  }
  return j;
}

TppReport verify_instance(const Instance& inst, const TppOptions& opt, int order_override) {
  bool dpp = inst.property == "dpp";
  switch (inst.kind) {
    case GroupKind::Table: {
      const TableGroup& g = *inst.table;
      return dpp ? verify_dpp(g, inst.Xt, inst.Zt, opt) : verify_tpp(g, inst.Xt, inst.Yt, inst.Zt, opt);
    }
    case GroupKind::Matrix: {
      MatrixGroup<GaussRational> g(inst.dim);
      return dpp ? verify_dpp(g, inst.Xm, inst.Zm, opt) : verify_tpp(g, inst.Xm, inst.Ym, inst.Zm, opt);
    }
    case GroupKind::Family: {
      int order = order_override ? order_override : inst.order;
      if (order < 1) throw std::invalid_argument("family instance needs a verification order");
      FamilyList X(inst.Xf, "X"), Z(inst.Zf, "Z");
      if (dpp) return verify_dpp_series(X, Z, order, opt);
      FamilyList Y(inst.Yf, "Y");
      return verify_tpp_series(X, Y, Z, order, opt);
    }
  }
  throw std::logic_error("unreachable");
}

json tpp_report_json(const TppReport& r) {
  json j;
  j["verdict"] = verdict_str(r.verdict);
  if (r.witness) j["witness"] = *r.witness;
  if (r.order_used) j["order_used"] = *r.order_used;
  j["tuples_checked"] = r.tuples_checked;
  if (r.seed) j["seed"] = *r.seed;
  j["mode"] = r.mode;
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.strata.empty()) j["strata"] = r.strata;
  return j;
}

}  // namespace liemm
