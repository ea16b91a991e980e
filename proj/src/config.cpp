#include "lsh/config.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "lsh/rng.hpp"

namespace lsh {

namespace {

std::string strip(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string token;
    while (std::getline(in, token, sep)) out.push_back(strip(token));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

double to_double(const std::string& token, const std::string& key) {
    if (token == "inf" || token == "infinity") return std::numeric_limits<double>::infinity();
    try {
        std::size_t pos = 0;
        const double v = std::stod(token, &pos);
        if (pos != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': bad number '" + token + "'");
    }
}

long to_long(const std::string& token, const std::string& key) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ConfigError("config key '" + key + "': bad integer '" + token + "'");
    return v;
}

} // namespace

RunConfig RunConfig::parse(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = strip(line);
        if (body.empty() || body[0] == '#') continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
        const std::string key = strip(body.substr(0, eq));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        if (cfg.values_.count(key))
            throw ConfigError("config: duplicate key '" + key + "'");
        cfg.values_[key] = strip(body.substr(eq + 1));
    }
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

bool RunConfig::has(const std::string& key) const { return values_.count(key) > 0; }

const std::string& RunConfig::raw(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("config: missing required key '" + key + "'");
    consumed_[key] = true;
    return it->second;
}

std::string RunConfig::get_string(const std::string& key) const { return raw(key); }

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    return raw(key);
}

long RunConfig::get_long(const std::string& key) const { return to_long(raw(key), key); }

long RunConfig::get_long(const std::string& key, long fallback) const {
    if (!has(key)) return fallback;
    return to_long(raw(key), key);
}

double RunConfig::get_double(const std::string& key) const { return to_double(raw(key), key); }

double RunConfig::get_double(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return to_double(raw(key), key);
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = raw(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<double> RunConfig::get_doubles(const std::string& key) const {
    std::vector<double> out;
    for (const std::string& token : split(raw(key), ','))
        out.push_back(to_double(token, key));
    return out;
}

std::vector<double> RunConfig::get_doubles(const std::string& key,
                                           std::vector<double> fallback) const {
    if (!has(key)) return fallback;
    return get_doubles(key);
}

std::vector<int> RunConfig::get_ints(const std::string& key) const {
    std::vector<int> out;
    for (const std::string& token : split(raw(key), ','))
        out.push_back(static_cast<int>(to_long(token, key)));
    return out;
}

std::optional<std::vector<int>> RunConfig::get_ints_opt(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return get_ints(key);
}

std::optional<std::vector<double>> RunConfig::get_doubles_opt(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return get_doubles(key);
}

Eigen::MatrixXd RunConfig::get_matrix(const std::string& key, int dim) const {
    const std::vector<double> v = get_doubles(key);
    Eigen::MatrixXd m(dim, dim);
    if (v.size() == 1) {
        m = Eigen::MatrixXd::Identity(dim, dim) * v[0];
        return m;
    }
    if (v.size() != static_cast<std::size_t>(dim * dim))
        throw ConfigError("config key '" + key + "': expected 1 or " + std::to_string(dim * dim) +
                          " values");
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = v[static_cast<std::size_t>(i * dim + j)];
    return m;
}

std::optional<Eigen::MatrixXd> RunConfig::get_matrix_opt(const std::string& key, int dim) const {
    if (!has(key)) return std::nullopt;
    return get_matrix(key, dim);
}

Eigen::VectorXd RunConfig::get_vector(const std::string& key, int dim) const {
    const std::vector<double> v = get_doubles(key);
    if (v.size() != static_cast<std::size_t>(dim))
        throw ConfigError("config key '" + key + "': expected " + std::to_string(dim) + " values");
    Eigen::VectorXd out(dim);
    for (int i = 0; i < dim; ++i) out(i) = v[static_cast<std::size_t>(i)];
    return out;
}

std::optional<Eigen::VectorXd> RunConfig::get_vector_opt(const std::string& key, int dim) const {
    if (!has(key)) return std::nullopt;
    return get_vector(key, dim);
}

std::vector<std::vector<double>> RunConfig::get_rows(const std::string& key) const {
    std::vector<std::vector<double>> rows;
    for (const std::string& row : split(raw(key), '|')) {
        std::vector<double> values;
        for (const std::string& token : split(row, ',')) values.push_back(to_double(token, key));
        rows.push_back(std::move(values));
    }
    return rows;
}

void RunConfig::merge_defaults(const RunConfig& other) {
    for (const auto& [key, value] : other.values_)
        if (!values_.count(key)) values_[key] = value;
}

void RunConfig::set(const std::string& key, const std::string& value) { values_[key] = value; }

void RunConfig::reject_unknown() const {
    for (const auto& [key, value] : values_)
        if (!consumed_.count(key))
            throw ConfigError("config: unknown key '" + key + "'");
}

std::string RunConfig::canonical_text() const {
    std::string out;
    for (const auto& [key, value] : values_) out += key + "=" + value + "\n";
    return out;
}

std::uint64_t RunConfig::content_hash() const { return detail::fnv1a64(canonical_text()); }

} // namespace lsh
