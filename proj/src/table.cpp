#include "kest/table.hpp"

#include <cmath>

#include "kest/errors.hpp"

namespace kest {

namespace {
constexpr std::pair<Method, const char*> kMethodNames[] = {
    {Method::plugin_log, "plugin_log"}, {Method::taylor_bt, "taylor_bt"},
    {Method::u_statistic, "u_statistic"}, {Method::euclid, "euclid"},
    {Method::quadratic, "quadratic"}, {Method::minimax, "minimax"},
    {Method::aqp, "aqp"}, {Method::custom, "custom"},
};
}

std::string to_string(Method m) {
    for (auto [v, n] : kMethodNames)
        if (v == m) return n;
    return "?";
}

Method method_from_string(const std::string& s) {
    for (auto [v, n] : kMethodNames)
        if (s == n) return v;
    throw ValidationError("unknown estimator method '" + s + "'");
}

EstimatorTable::EstimatorTable(int K, double beta, Method method, std::vector<double> coeffs, Json meta)
    : K_(K), beta_(beta), method_(method), coeffs_(std::move(coeffs)), meta_(std::move(meta)) {
    if (K_ < 1) throw ValidationError("table K must be a positive integer");
    if (!(beta_ > 0.0) || !std::isfinite(beta_)) throw ValidationError("table beta must be positive");
    if (coeffs_.size() != static_cast<std::size_t>(K_) + 1)
        throw ValidationError("table has " + std::to_string(coeffs_.size()) + " coefficients, expected K+1 = " +
                              std::to_string(K_ + 1));
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        if (!std::isfinite(coeffs_[k]))
            throw ValidationError("table coefficient c_" + std::to_string(k) + " is not finite");
    if (meta_.is_null()) meta_ = Json::object();
    if (!meta_.is_object()) throw ValidationError("table meta must be an object");
}

EstimatorTable EstimatorTable::with_meta(const std::string& key, Json value) const {
    Json m = meta_;
    m[key] = std::move(value);
    return EstimatorTable(K_, beta_, method_, coeffs_, std::move(m));
}

}  // namespace kest
