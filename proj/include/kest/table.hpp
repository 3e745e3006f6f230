#pragma once

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace kest {

using Json = nlohmann::ordered_json;

enum class Method { plugin_log, taylor_bt, u_statistic, euclid, quadratic, minimax, aqp, custom };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

// Reward values c_0..c_K for a K-sample estimator R(X) = c_X. Immutable once built.
class EstimatorTable {
public:
    EstimatorTable(int K, double beta, Method method, std::vector<double> coeffs, Json meta = Json::object());

    int K() const { return K_; }
    double beta() const { return beta_; }
    Method method() const { return method_; }
    std::span<const double> coeffs() const { return coeffs_; }
    double operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
    const Json& meta() const { return meta_; }

    EstimatorTable with_meta(const std::string& key, Json value) const;

private:
    int K_;
    double beta_;
    Method method_;
    std::vector<double> coeffs_;
    Json meta_;
};

}  // namespace kest
