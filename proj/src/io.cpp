#include "httlab/io.hpp"

#include <fstream>
#include <sstream>

#include "httlab/errors.hpp"

namespace httlab {

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << content;
}

void write_json(const std::string& path, const Json& j) {
    write_text(path, j.dump(2) + "\n");
}

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

std::string csv_neutral_curves(const std::vector<std::array<double, 3>>& rows) {
    std::ostringstream os;
    os << "n,D_u,D_v\n";
    for (const auto& r : rows)
        os << static_cast<int>(r[0]) << ',' << fmt(r[1]) << ',' << fmt(r[2]) << '\n';
    return os.str();
}

std::string csv_reduced_trajectory(const std::vector<ReducedSample>& traj) {
    std::ostringstream os;
    os << "t,r0,z1,z2\n";
    for (const auto& s : traj)
        os << fmt(s.t) << ',' << fmt(s.state.r0) << ',' << fmt(s.state.z1) << ','
           << fmt(s.state.z2) << '\n';
    return os.str();
}

std::string csv_galerkin_trajectory(const std::vector<GalerkinSample>& traj) {
    std::ostringstream os;
    os << "t";
    if (!traj.empty())
        for (int m = 0; m <= traj.front().state.N; ++m) os << ",Re_u" << m << ",Re_v" << m;
    os << '\n';
    for (const auto& s : traj) {
        os << fmt(s.t);
        for (int m = 0; m <= s.state.N; ++m)
            os << ',' << fmt(s.state.u[m].real()) << ',' << fmt(s.state.v[m].real());
        os << '\n';
    }
    return os.str();
}

std::string csv_norm_series(const std::vector<double>& t, const std::vector<double>& norm) {
    std::ostringstream os;
    os << "t,norm_u_L2\n";
    for (std::size_t i = 0; i < t.size(); ++i) os << fmt(t[i]) << ',' << fmt(norm[i]) << '\n';
    return os.str();
}

std::string csv_field_matrix(const std::vector<FieldState>& snaps, const Grid& grid,
                             bool field_v) {
    std::ostringstream os;
    os << "t";
    for (int i = 0; i < grid.n_points; ++i) {
        std::ostringstream lab;
        lab.precision(8);
        lab << grid.x(i);
        os << ",x" << lab.str();
    }
    os << '\n';
    for (const auto& s : snaps) {
        os << fmt(s.t);
        const auto& f = field_v ? s.v : s.u;
        for (double val : f) os << ',' << fmt(val);
        os << '\n';
    }
    return os.str();
}

Json to_json(const BifurcationPoint& pt) {
    const char* kind = "HTT";
    switch (pt.kind) {
        case BifurcationKind::HopfAlpha: kind = "HopfAlpha"; break;
        case BifurcationKind::Degenerate12: kind = "Degenerate12"; break;
        case BifurcationKind::HTT: kind = "HTT"; break;
        case BifurcationKind::DegenerateMM1: kind = "DegenerateMM1"; break;
    }
    return Json{{"kind", kind},
                {"params", {{"D_u", pt.params.D_u},
                            {"D_v", pt.params.D_v},
                            {"alpha", pt.params.alpha},
                            {"L", pt.params.L},
                            {"k", pt.params.k()}}},
                {"verification", pt.verification}};
}

Json to_json(const EigenQuantities& eq) {
    return Json{{"mu0", eq.mu0},         {"omega0", eq.omega0},
                {"mu1_plus", eq.mu1_plus}, {"mu1_minus", eq.mu1_minus},
                {"mu2_plus", eq.mu2_plus}, {"mu2_minus", eq.mu2_minus}};
}

namespace {
Json mat2(const Mat2& m) { return Json::array({m.a11, m.a12, m.a21, m.a22}); }
Json cplx(const Complex& z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }
}  // namespace

Json to_json(const TransformMatrices& T) {
    return Json{{"T0", mat2(T.T0)}, {"T1", mat2(T.T1)}, {"T2", mat2(T.T2)},
                {"det_T0", T.det0}, {"det_T1", T.det1}, {"det_T2", T.det2}};
}

Json to_json(const ManifoldQuadratics& q) {
    return Json{{"U3_0011", q.U3_0011}, {"V3_0011", q.V3_0011},
                {"U4_0002", q.U4_0002}, {"V4_0002", q.V4_0002},
                {"B1_1010", q.B1_1010}, {"B1_0110", q.B1_0110}, {"B1_0011", q.B1_0011},
                {"B2_0020", q.B2_0020}, {"B2_1001", q.B2_1001}, {"B2_0101", q.B2_0101},
                {"denominator_margins", q.denominator_margins},
                {"warnings", q.warnings}};
}

Json to_json(const ReducedCoeffs& r) {
    return Json{
        {"A", {r.A1, r.A2, r.A3, r.A4, r.A5}},
        {"a", {r.a1, r.a2, r.a3, r.a4, r.a5, r.a6, r.a7, r.a8, r.a9}},
        {"B", {r.B1, r.B2, r.B3, r.B4, r.B5}},
        {"b", {r.b1, r.b2, r.b3, r.b4, r.b5, r.b6, r.b7, r.b8, r.b9}},
        {"C", {r.C1, r.C2, r.C3}},
        {"c", {r.c1, r.c2, r.c3, r.c4, r.c5, r.c6, r.c7}},
        {"D", {r.D1, r.D2, r.D3}},
        {"d", {r.d1, r.d2, r.d3, r.d4, r.d5, r.d6, r.d7}},
        {"interpreted_terms", r.interpreted_terms}};
}

Json to_json(const ComplexCoeffs& c) {
    Json j;
    j["E"] = {cplx(c.E1), cplx(c.E2), cplx(c.E3), cplx(c.E4), cplx(c.E5)};
    j["e"] = {cplx(c.e1), cplx(c.e2), cplx(c.e3), cplx(c.e4), cplx(c.e5),
              cplx(c.e6), cplx(c.e7), cplx(c.e8), cplx(c.e9)};
    j["H"] = {cplx(c.H1), cplx(c.H2), cplx(c.H3), cplx(c.H4)};
    j["I"] = {cplx(c.I1), cplx(c.I2), cplx(c.I3), cplx(c.I4)};
    j["p"] = {cplx(c.p1), cplx(c.p2)};
    j["q"] = {cplx(c.q1), cplx(c.q2)};
    return j;
}

Json to_json(const NormalFormCoeffs& nf) {
    return Json{{"lambda0", cplx(nf.lambda0)}, {"mu1", nf.mu1},   {"mu2", nf.mu2},
                {"a0t", cplx(nf.a0t)},         {"a1t", cplx(nf.a1t)}, {"a2t", cplx(nf.a2t)},
                {"b0t", nf.b0t}, {"b1t", nf.b1t}, {"b2t", nf.b2t},
                {"c0t", nf.c0t}, {"c1t", nf.c1t}, {"c2t", nf.c2t},
                {"Bt", nf.Bt},   {"Ct", nf.Ct}};
}

Json to_json(const CanonicalCoeffs& c) {
    return Json{{"sigma1", c.sigma1}, {"sigma2", c.sigma2}, {"sigma3", c.sigma3},
                {"d01", c.d01}, {"d02", c.d02},
                {"d10", c.d10}, {"d11", c.d11}, {"d12", c.d12},
                {"d20", c.d20}, {"d21", c.d21},
                {"scale", {{"l", c.scale.l},
                           {"s_r0", c.scale.s_r0},
                           {"s_z1", c.scale.s_z1},
                           {"s_z2", c.scale.s_z2}}}};
}

Json to_json(const CoefficientSet& set) {
    Json j;
    j["point"] = to_json(set.point);
    j["eigen"] = to_json(set.eigen);
    j["transforms"] = to_json(set.transforms);
    j["manifold_quadratics"] = to_json(set.quadratics);
    j["reduced"] = to_json(set.reduced);
    j["complexified"] = to_json(set.complexified);
    j["normal_form"] = to_json(set.normal_form);
    if (set.canonical_ok)
        j["canonical"] = to_json(set.canonical);
    else
        j["canonical_error"] = set.canonical_error;
    return j;
}

Json to_json(const EquilibriumInfo& info) {
    Json ev = Json::array();
    for (const auto& e : info.eigenvalues) ev.push_back(cplx(e));
    return Json{{"label", to_string(info.label)},
                {"state", {info.state.r0, info.state.z1, info.state.z2}},
                {"eigenvalues", ev},
                {"existence_ok", info.existence_ok},
                {"field_residual", info.field_residual},
                {"note", info.note}};
}

Json to_json(const HopfHopfData& h) {
    Json j{{"rho", h.rho},
           {"z1s", h.z1s}, {"z2s", h.z2s},
           {"mu0s", h.mu0s}, {"mu1s", h.mu1s}, {"mu2s", h.mu2s},
           {"nu11", h.nu11}, {"nu12", h.nu12}, {"nu21", h.nu21}, {"nu22", h.nu22},
           {"omega12", h.omega12},
           {"J1", h.J1}, {"J2", h.J2},
           {"K1", cplx(h.K1)}, {"K2", cplx(h.K2)},
           {"b", h.b}, {"c", h.c}, {"d", h.d},
           {"delta_tilde", h.delta_tilde}};
    if (h.unfolding) j["case"] = to_string(*h.unfolding);
    return j;
}

Json to_json(const HopfPitchforkDiagnosis& d) {
    // what the planar-amplitude equilibria lift to, one level up and in the
    // reaction-diffusion system
    static const Json correspondences = {
        {"E1", {{"lifts_to", "periodic orbit"},
                {"rd_solution", "stationary 2-mode sol. + uniform osci."}}},
        {"E2", {{"lifts_to", "invariant 2-torus"},
                {"rd_solution", "uniform osci. + 0:2 mixed mode osci."}}},
        {"E3", {{"lifts_to", "periodic orbit"},
                {"rd_solution", "stationary 1-mode sol. + 0:2 mixed mode osci."}}},
        {"E4", {{"lifts_to", "invariant 2-torus"},
                {"rd_solution",
                 "uniform osci. + 0:2 mixed mode osci. + stationary 1-mode sol."}}},
        {"PO", {{"lifts_to", "invariant 3-torus"}, {"rd_solution", ""}}}};
    return Json{{"correspondences", correspondences},
                {"e4_exists", d.e4_exists},
                {"r0", d.r0},
                {"z2", d.z2},
                {"via_pattern_plus", d.via_pattern_plus},
                {"via_pattern_minus", d.via_pattern_minus},
                {"delta_hat", d.delta_hat},
                {"hopf_mu0", d.hopf_mu0},
                {"hopf_residual", d.hopf_residual},
                {"pitchfork_mu1_plus", d.pitchfork_mu1_plus},
                {"pitchfork_mu1_minus", d.pitchfork_mu1_minus},
                {"pitchfork_residual", d.pitchfork_residual},
                {"z1_row_eigenvalue_plus", d.z1_row_eigenvalue_plus},
                {"z1_row_eigenvalue_minus", d.z1_row_eigenvalue_minus},
                {"rz_block_trace", d.rz_block_trace}};
}

Model model_from_json(const Json& descriptor) {
    if (!descriptor.contains("model"))
        throw ConfigError("model descriptor: missing 'model' key");
    const std::string name = descriptor.at("model").get<std::string>();
    std::map<std::string, double> params;
    if (descriptor.contains("params"))
        for (auto& [key, val] : descriptor.at("params").items())
            params[key] = val.get<double>();
    if (name == "custom") {
        for (const char* key : {"f", "g", "equilibrium"})
            if (!descriptor.contains(key))
                throw ConfigError(std::string("custom model descriptor: missing '") + key + "'");
        const auto eq = descriptor.at("equilibrium");
        if (!eq.is_array() || eq.size() != 2)
            throw ConfigError("custom model descriptor: equilibrium must be [u, v]");
        return custom_model(descriptor.at("f").get<std::string>(),
                            descriptor.at("g").get<std::string>(),
                            {eq[0].get<double>(), eq[1].get<double>()}, params);
    }
    return builtin_model(name, params);
}

CanonicalCoeffs canonical_from_json(const Json& j) {
    CanonicalCoeffs c;
    auto get = [&](const char* key) {
        if (!j.contains(key))
            throw ConfigError(std::string("canonical coefficients: missing '") + key + "'");
        return j.at(key).get<double>();
    };
    c.sigma1 = get("sigma1");
    c.sigma2 = get("sigma2");
    c.sigma3 = get("sigma3");
    for (double s : {c.sigma1, c.sigma2, c.sigma3})
        if (s != 1.0 && s != -1.0)
            throw ConfigError("canonical coefficients: sigma values must be +-1");
    c.d01 = get("d01"); c.d02 = get("d02");
    c.d10 = get("d10"); c.d11 = get("d11"); c.d12 = get("d12");
    c.d20 = get("d20"); c.d21 = get("d21");
    if (j.contains("scale")) {
        const auto& s = j.at("scale");
        c.scale.l = s.value("l", 0.0);
        c.scale.s_r0 = s.value("s_r0", 0.0);
        c.scale.s_z1 = s.value("s_z1", 0.0);
        c.scale.s_z2 = s.value("s_z2", 0.0);
    }
    return c;
}

std::uint64_t content_hash(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace httlab
