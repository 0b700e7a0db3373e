#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "tropkit/bogomolov.hpp"
#include "tropkit/rank_calculus.hpp"

namespace tropkit::io {

using json = nlohmann::json;

/// Malformed input: unreadable file, bad JSON, wrong shape. Domain problems in
/// well-formed input surface as tropkit::Error instead.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const json& j);
std::string dump(const json& j);

json to_json(const Rat& x);
Rat rat_from(const json& j);
json to_json(const QVector& v);
QVector vector_from(const json& j);
/// Rows; cols is needed only for matrices without rows.
json to_json(const QMatrix& m);
QMatrix matrix_from(const json& j, std::optional<std::size_t> cols = std::nullopt);

json to_json(const Polytope& p);
Polytope polytope_from(const json& j);
json to_json(const Lattice& l);  // basis vectors
Lattice lattice_from(const json& j);
json to_json(const ValueGroup& g);
ValueGroup value_group_from(const json& j);

struct ComplexData {
  Lattice lattice;
  ValueGroup gamma = ValueGroup::rationals();
  std::vector<Polytope> cells;
};
json to_json(const PeriodicComplex& c);
ComplexData complex_from(const json& j);
json to_json(const QuotientComplex& q);
QuotientComplex quotient_from(const json& j);
json to_json(const PeriodicViolation& v);

json to_json(const Hyperplane& h);
Hyperplane hyperplane_from(const json& j);
json to_json(const AffineMap& m);
AffineMap affine_from(const json& j);
json to_json(const ExponentMap& e);
ExponentMap exponent_map_from(const json& j, const ValueGroup& gamma = ValueGroup::rationals());
json to_json(const PiecewiseAffineMap& f);
PiecewiseAffineMap piecewise_from(const json& j);

struct SkeletonBundle {
  SkeletonModel model;
  FaffTable fmaps;
  std::optional<NondegData> nondeg;
};
json to_json(const SkeletonBundle& s);
SkeletonBundle skeleton_from(const json& j);
json to_json(const NondegData& nd);
NondegData nondeg_from(const json& j);
json to_json(const SkeletonReport& r);

json to_json(const Carrier& c);
CarrierPtr carrier_from(const json& j);
/// Carrier of a file that holds either a carrier or a periodic complex.
CarrierPtr carrier_from_any(const json& j);
json to_json(const PolytopalMeasure& mu);
PolytopalMeasure measure_from(const json& j);
json to_json(const std::vector<StrictSupport>& s);

json to_json(const TropSubvariety& x, const std::string& place = "");
/// Place name comes from the "place" field when present.
PlaceTropData place_data_from(const json& j, const std::string& fallback_place);
std::map<std::string, Rat> weights_from(const json& j);

json to_json(const Verdict& v);
json to_json(const ConsistencyReport& r);
json to_json(const Inference& i);

json to_json(const AbelianProfile& p);
AbelianProfile profile_from(const json& j);
json to_json(const IsogenyDecomposition& d);
IsogenyDecomposition decomposition_from(const json& j);
json to_json(const ConjectureStatus& s);

struct CurveData {
  int g = 0;
  std::map<std::string, DualGraph> graphs;
};
json to_json(const DualGraph& g);
DualGraph graph_from(const json& j);
json to_json(const CurveData& c);
CurveData curve_data_from(const json& j);
json to_json(const CurveStatus& s);

}  // namespace tropkit::io
