#include <cstdio>
#include <fstream>
#include <sstream>

#include "kest/errors.hpp"
#include "kest/game.hpp"

namespace kest {

namespace {

template <class T>
T field(const Json& j, const char* name, const std::string& origin) {
    if (!j.contains(name)) throw ParseError(origin + ": field '" + name + "' is missing");
    try {
        return j.at(name).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(origin + ": field '" + name + "' has the wrong type (" + e.what() + ")");
    }
}

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

// The parser may be given as an index list or as an object {trace: answer}.
GameSpec game_spec_from_json(const std::string& text, const std::string& origin) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError(origin + ": top level must be an object");
    GameSpec s;
    s.traces = field<std::vector<std::string>>(j, "traces", origin);
    s.answers = field<std::vector<std::string>>(j, "answers", origin);
    const Json& p = j.contains("parser") ? j.at("parser") : throw ParseError(origin + ": field 'parser' is missing");
    if (p.is_object()) {
        s.parser.assign(s.traces.size(), -1);
        for (std::size_t y = 0; y < s.traces.size(); ++y) {
            if (!p.contains(s.traces[y])) throw ValidationError(origin + ": parser has no entry for '" + s.traces[y] + "'");
            const auto a = p.at(s.traces[y]).get<std::string>();
            for (std::size_t z = 0; z < s.answers.size(); ++z)
                if (s.answers[z] == a) s.parser[y] = static_cast<int>(z);
            if (s.parser[y] < 0) throw ValidationError(origin + ": parser maps to unknown answer '" + a + "'");
        }
    } else {
        s.parser = field<std::vector<int>>(j, "parser", origin);
    }
    s.pi0 = field<std::vector<double>>(j, "pi0", origin);
    s.beta = field<double>(j, "beta", origin);
    s.geometry = geometry_from_string(field<std::string>(j, "geometry", origin));
    s.alignment = alignment_from_string(field<std::string>(j, "alignment", origin));
    s.sign = j.contains("sign") ? field<int>(j, "sign", origin) : (s.geometry == Geometry::kl ? -1 : +1);
    s.K = field<int>(j, "K", origin);
    s.seed = j.contains("seed") ? field<std::uint64_t>(j, "seed", origin) : 0;
    s.validate();
    return s;
}

std::string game_spec_to_json(const GameSpec& s) {
    Json j;
    j["traces"] = s.traces;
    j["answers"] = s.answers;
    j["parser"] = s.parser;
    j["pi0"] = s.pi0;
    j["beta"] = s.beta;
    j["geometry"] = to_string(s.geometry);
    j["alignment"] = to_string(s.alignment);
    j["sign"] = s.sign;
    j["K"] = s.K;
    j["seed"] = s.seed;
    return j.dump(2) + "\n";
}

GameSpec load_game_spec(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return game_spec_from_json(ss.str(), path.string());
}

std::string trace_csv(const GameTrace& trace) {
    std::ostringstream os;
    os << "t,gap,entropy_of_policy,l1_error_to_ref_NE\n";
    for (const auto& r : trace.records)
        os << r.t << ',' << g17(r.gap) << ',' << g17(r.entropy) << ',' << g17(r.l1_error) << '\n';
    return os.str();
}

std::string trace_json(const GameTrace& trace, const GameSpec& spec) {
    const auto& f = trace.final();
    Json j;
    j["mode"] = trace.mode;
    j["seed"] = trace.seed;
    j["iterations"] = f.t;
    j["records"] = trace.records.size();
    j["final"] = {{"policy", f.policy},
                  {"marginal", answer_marginal(f.policy, spec.parser, spec.nZ())},
                  {"q", f.q},
                  {"u", f.u},
                  {"gap", f.gap},
                  {"entropy", f.entropy},
                  {"l1_error_to_ref_NE", f.l1_error}};
    j["reference_nu"] = trace.reference_nu;
    // empirical proxies, not the analysis constants themselves
    j["proxies"] = {{"max_weight_ratio", trace.max_weight_ratio}, {"grad_second_moment", trace.grad_second_moment}};
    return j.dump(2) + "\n";
}

}  // namespace kest
