#include "degfront/model.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

namespace degfront {

namespace {

// keep only the worst offender for a given hypothesis id
void record(HypothesisReport& rep, const std::string& id, double u, double observed,
            bool smaller_is_worse) {
    for (auto& v : rep.violations) {
        if (v.hypothesis == id) {
            bool worse = smaller_is_worse ? observed < v.observed : observed > v.observed;
            if (worse) {
                v.u = u;
                v.observed = observed;
            }
            return;
        }
    }
    rep.violations.push_back({id, u, observed});
}

} // namespace

HypothesisReport check_hypotheses(const Model& m, int n_samples) {
    if (n_samples < 3)
        throw std::invalid_argument("check_hypotheses: need at least 3 samples");
    HypothesisReport rep;

    if (m.D(0.0) != 0.0)
        record(rep, "D(0) = 0", 0.0, m.D(0.0), false);
    if (m.f(0.0) != 0.0)
        record(rep, "f(0) = 0", 0.0, m.f(0.0), false);
    if (m.f(1.0) != 0.0)
        record(rep, "f(1) = 0", 1.0, m.f(1.0), false);
    if (!(m.fp0 > 0.0))
        record(rep, "f'(0) > 0", 0.0, m.fp0, true);
    if (!(m.fp1 < 0.0))
        record(rep, "f'(1) < 0", 1.0, m.fp1, false);

    for (int i = 0; i <= n_samples; ++i) {
        double u = static_cast<double>(i) / n_samples;
        if (u > 0.0 && !(m.D(u) > 0.0))
            record(rep, "D(u) > 0 on (0,1]", u, m.D(u), true);
        if (!(m.Dp(u) > 0.0))
            record(rep, "D'(u) > 0 on [0,1]", u, m.Dp(u), true);
        if (u > 0.0 && u < 1.0 && !(m.f(u) > 0.0))
            record(rep, "f(u) > 0 on (0,1)", u, m.f(u), true);
    }

    rep.passed = rep.violations.empty();
    return rep;
}

double speed_threshold(const Model& m, double c_star) {
    if (!(c_star > 0.0))
        throw std::invalid_argument("speed_threshold: c_star must be positive");
    double gap = m.fp0 - m.fp1;
    if (!(gap > 0.0))
        throw std::domain_error("speed_threshold: requires f'(0) > f'(1)");
    double structural = m.fp0 * std::sqrt(m.D1) / std::sqrt(gap);
    return std::max(c_star, structural);
}

std::optional<KnownCStar> known_c_star(const Model& m) {
    if (m.beta == 0.0 && m.alpha > 0.0)
        return KnownCStar{std::sqrt(m.alpha / 2.0), false};
    if (m.alpha == 1.0 && m.beta > 0.0 && m.beta <= 0.2)
        return KnownCStar{(1.0 + m.beta / 5.0) / std::sqrt(2.0), true};
    return std::nullopt;
}

std::string model_to_json(const Model& m) {
    nlohmann::json j;
    j["D"] = {{"alpha", m.alpha}, {"beta", m.beta}};
    j["f"] = "logistic";
    return j.dump();
}

Model model_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("f").get<std::string>() != "logistic")
        throw std::invalid_argument("model_from_json: unsupported reaction kind");
    return Model(j.at("D").at("alpha").get<double>(), j.at("D").at("beta").get<double>());
}

} // namespace degfront
