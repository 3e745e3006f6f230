#include <cstdio>
#include <fstream>
#include <sstream>

#include "kest/errors.hpp"
#include "kest/estimators.hpp"

namespace kest {

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

template <class T>
T field(const Json& j, const char* name, const std::string& origin) {
    if (!j.contains(name)) throw ParseError(origin + ": field '" + name + "' is missing");
    try {
        return j.at(name).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(origin + ": field '" + name + "' has the wrong type (" + e.what() + ")");
    }
}

}  // namespace

std::string table_to_json(const EstimatorTable& t) {
    std::ostringstream os;
    os << "{\n"
       << "  \"schema\": \"estimator-table/v1\",\n"
       << "  \"K\": " << t.K() << ",\n"
       << "  \"beta\": " << fmt17(t.beta()) << ",\n"
       << "  \"method\": \"" << to_string(t.method()) << "\",\n"
       << "  \"meta\": " << t.meta().dump() << ",\n"
       << "  \"coeffs\": [";
    for (int k = 0; k <= t.K(); ++k) os << (k ? ",\n    " : "\n    ") << fmt17(t[k]);
    os << "\n  ]\n}\n";
    return os.str();
}

EstimatorTable table_from_json(const std::string& text, const std::string& origin) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError(origin + ": top level must be an object");
    const auto schema = field<std::string>(j, "schema", origin);
    if (schema != "estimator-table/v1") throw ParseError(origin + ": unsupported schema '" + schema + "'");
    const int K = field<int>(j, "K", origin);
    const double beta = field<double>(j, "beta", origin);
    const auto method = method_from_string(field<std::string>(j, "method", origin));
    auto coeffs = field<std::vector<double>>(j, "coeffs", origin);
    if (coeffs.size() != static_cast<std::size_t>(K) + 1)
        throw ValidationError(origin + ": header says K=" + std::to_string(K) + " but coeffs has " +
                              std::to_string(coeffs.size()) + " entries");
    Json meta = j.contains("meta") ? j.at("meta") : Json::object();
    return EstimatorTable(K, beta, method, std::move(coeffs), std::move(meta));
}

void save_table(const EstimatorTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << table_to_json(table);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

EstimatorTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return table_from_json(ss.str(), path.string());
}

}  // namespace kest
