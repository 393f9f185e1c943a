#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "liemm/group.hpp"
#include "liemm/tpp.hpp"

namespace liemm {

using json = nlohmann::json;

// Exact scalars: "p/q" strings (or JSON integers) for rationals,
// {"re": .., "im": ..} for Gaussian rationals.
GaussRational parse_scalar(const json& j);
json scalar_json(const GaussRational& z);
json scalar_json(const Rational& r);

// {"hi": h, "terms": {"e": scalar, ...}}; "hi" omitted means exact.
EpsLaurent parse_series(const json& j);
json series_json(const EpsLaurent& s);

Mat<GaussRational> parse_matrix(const json& j);
json matrix_json(const Mat<GaussRational>& m);
json matrix_json(const Mat<Rational>& m);

// Family element: {"order": N, "entries": [[series-or-map, ...], ...]} where
// an entry may be a {"e": scalar} map (window [.., N]) or a full series object.
SeriesMat parse_family(const json& j);
json family_json(const SeriesMat& m);

enum class GroupKind { Table, Matrix, Family };

struct Instance {
  GroupKind kind = GroupKind::Table;
  std::string property = "tpp";  // or "dpp"
  std::optional<TableGroup> table;
  std::size_t dim = 0;
  std::vector<int> Xt, Yt, Zt;
  std::vector<Mat<GaussRational>> Xm, Ym, Zm;
  std::vector<SeriesMat> Xf, Yf, Zf;
  int order = 0;  // series verification order for family instances
};

Instance parse_instance(const json& j);
Instance load_instance_file(const std::string& path);
json instance_json(const Instance& inst);

// Runs TPP (or DPP) verification appropriate to the instance kind.
TppReport verify_instance(const Instance& inst, const TppOptions& opt, int order_override = 0);

json tpp_report_json(const TppReport& r);

}  // namespace liemm
