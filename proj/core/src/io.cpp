#include "degfront/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace degfront {

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : os_(path, std::ios::binary), width_(header.size()) {
    if (!os_) throw std::runtime_error("CsvWriter: cannot open " + path);
    emit(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != width_) throw std::invalid_argument("CsvWriter: field count mismatch");
    emit(fields);
}

void CsvWriter::emit(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        const std::string& f = fields[i];
        bool quote = f.find_first_of(",\"\r\n") != std::string::npos;
        if (quote) {
            os_ << '"';
            for (char c : f) {
                if (c == '"') os_ << '"';
                os_ << c;
            }
            os_ << '"';
        } else {
            os_ << f;
        }
        if (i + 1 < fields.size()) os_ << ',';
    }
    os_ << "\r\n";
}

std::string CsvWriter::cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json report_json(const cplx& z) {
    return {{"re", z.real()}, {"im", z.imag()}};
}

nlohmann::json report_json(const HypothesisReport& r) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& h : r.violations)
        v.push_back({{"hypothesis", h.hypothesis}, {"u", h.u}, {"observed", h.observed}});
    return {{"passed", r.passed}, {"violations", v}};
}

nlohmann::json report_json(const WeightPlan& r) {
    return {{"speed_ok", r.speed_ok}, {"a_lower", r.a_lower},       {"a_upper", r.a_upper},
            {"empty", r.empty},       {"recommended_a", r.recommended_a}};
}

nlohmann::json report_json(const MorseIndexReport& r) {
    return {{"dimU_plus", r.dimU_plus},
            {"dimS_minus", r.dimS_minus},
            {"predicted_index", r.predicted_index},
            {"on_border", r.on_border}};
}

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Stable: return "Stable";
    case Verdict::Unstable: return "Unstable";
    default: return "Marginal";
    }
}

nlohmann::json report_json(const SpectrumReport& r) {
    nlohmann::json j;
    j["eps"] = r.eps;
    j["a"] = r.a;
    j["h"] = r.h;
    j["N"] = r.N;
    j["tol_stab"] = r.tol_stab;
    j["analytic_border_max"] = r.analytic_border_max;
    j["verdict"] = verdict_name(r.verdict);
    j["empty_spectrum"] = r.empty_spectrum;
    j["rightmost_any"] = report_json(r.rightmost_any);
    j["has_localized"] = r.has_localized;
    if (r.has_localized) j["rightmost_localized"] = report_json(r.rightmost_localized);
    j["n_eigenvalues"] = r.eigenvalues.size();
    return j;
}

nlohmann::json report_json(const RegSweep& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        nlohmann::json ten = nlohmann::json::array();
        for (const cplx& z : row.ten) ten.push_back(report_json(z));
        rows.push_back({{"eps", row.eps},
                        {"ten_rightmost_localized", ten},
                        {"drift", row.drift},
                        {"flagged", row.flagged},
                        {"lam0_drift", row.lam0_drift}});
    }
    return {{"rows", rows}, {"slope", r.slope}};
}

nlohmann::json report_json(const EnergyReport& r) {
    return {{"lambda", report_json(r.lambda)},
            {"lhs", report_json(r.lhs)},
            {"rhs", r.rhs},
            {"boundary_term", report_json(r.boundary_term)},
            {"relative_residual", r.relative_residual},
            {"window", {r.window_l, r.window_r}},
            {"window_shrunk", r.window_shrunk}};
}

const char* decay_class_name(DecayClass c) {
    switch (c) {
    case DecayClass::SingleExponential: return "SingleExponential";
    case DecayClass::FasterThanExponential: return "FasterThanExponential";
    default: return "Inconclusive";
    }
}

nlohmann::json report_json(const DecayReport& r) {
    return {{"side", r.side == TailSide::Plus ? "Plus" : "Minus"},
            {"fitted_rate", r.fitted_rate},
            {"predicted_rate", r.predicted_rate},
            {"r_squared", r.r_squared},
            {"classification", decay_class_name(r.classification)},
            {"beta", r.beta}};
}

nlohmann::json report_json(const TailAudit& r) {
    nlohmann::json j;
    j["phi"] = report_json(r.phi);
    j["phix"] = report_json(r.phix);
    j["phi_weighted"] = report_json(r.phi_weighted);
    j["phix_weighted"] = report_json(r.phix_weighted);
    if (r.eigvec) j["eigvec"] = report_json(*r.eigvec);
    j["envelope_r2"] = r.envelope_r2;
    j["window"] = {r.window_lo, r.window_hi};
    j["a"] = r.a;
    j["classification"] = decay_class_name(r.classification);
    return j;
}

nlohmann::json profile_meta_json(const FrontProfile& p) {
    return {{"c", p.c},
            {"h", p.h},
            {"Xm", p.Xm},
            {"Xp", p.Xp},
            {"N", p.phi.size()},
            {"rate_minus", p.rate_minus},
            {"rate_plus", p.rate_plus},
            {"x0_anchor", p.x0_anchor}};
}

} // namespace degfront
