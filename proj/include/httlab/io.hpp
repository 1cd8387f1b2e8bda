#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "httlab/galerkin.hpp"
#include "httlab/manifold.hpp"
#include "httlab/nf_dynamics.hpp"
#include "httlab/pde.hpp"
#include "httlab/stability.hpp"

namespace httlab {

using Json = nlohmann::json;

void write_text(const std::string& path, const std::string& content);
void write_json(const std::string& path, const Json& j);

// CSV emitters; all files start with a header row.
std::string csv_neutral_curves(const std::vector<std::array<double, 3>>& rows);  // n, D_u, D_v
std::string csv_reduced_trajectory(const std::vector<ReducedSample>& traj);
std::string csv_galerkin_trajectory(const std::vector<GalerkinSample>& traj);
std::string csv_norm_series(const std::vector<double>& t, const std::vector<double>& norm);
std::string csv_field_matrix(const std::vector<FieldState>& snaps, const Grid& grid,
                             bool field_v);

Json to_json(const BifurcationPoint& pt);
Json to_json(const EigenQuantities& eq);
Json to_json(const TransformMatrices& T);
Json to_json(const ManifoldQuadratics& q);
Json to_json(const ReducedCoeffs& r);
Json to_json(const ComplexCoeffs& c);
Json to_json(const NormalFormCoeffs& nf);
Json to_json(const CanonicalCoeffs& c);
Json to_json(const CoefficientSet& set);
Json to_json(const EquilibriumInfo& info);
Json to_json(const HopfHopfData& h);
Json to_json(const HopfPitchforkDiagnosis& d);

// Model descriptor: {"model": "schnakenberg", "params": {...}} or
// {"model": "custom", "f": "...", "g": "...", "equilibrium": [u, v], "params": {...}}
Model model_from_json(const Json& descriptor);
CanonicalCoeffs canonical_from_json(const Json& j);

// FNV-1a content hash for run manifests.
std::uint64_t content_hash(const std::string& data);

}  // namespace httlab
