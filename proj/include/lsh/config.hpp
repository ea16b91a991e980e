#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lsh/errors.hpp"

namespace lsh {

/// Flat key=value run configuration with `#` comments. Typed getters mark
/// keys as consumed; `reject_unknown()` fails on anything left over, so
/// misspelled keys never pass silently.
class RunConfig {
public:
    static RunConfig parse(const std::string& text);
    static RunConfig load(const std::string& path);

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    long get_long(const std::string& key) const;
    long get_long(const std::string& key, long fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    /// Comma-separated doubles.
    std::vector<double> get_doubles(const std::string& key) const;
    std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;
    std::vector<int> get_ints(const std::string& key) const;
    std::optional<std::vector<int>> get_ints_opt(const std::string& key) const;
    std::optional<std::vector<double>> get_doubles_opt(const std::string& key) const;

    /// Row-major square matrix from d*d comma-separated values, or a single
    /// value v meaning v * I.
    Eigen::MatrixXd get_matrix(const std::string& key, int dim) const;
    std::optional<Eigen::MatrixXd> get_matrix_opt(const std::string& key, int dim) const;
    Eigen::VectorXd get_vector(const std::string& key, int dim) const;
    std::optional<Eigen::VectorXd> get_vector_opt(const std::string& key, int dim) const;

    /// `|`-separated rows of comma-separated doubles.
    std::vector<std::vector<double>> get_rows(const std::string& key) const;

    /// Layer defaults under this config: existing keys win, new keys fill in.
    void merge_defaults(const RunConfig& other);
    void set(const std::string& key, const std::string& value);

    void reject_unknown() const;

    /// Canonical `key=value` text of every entry, sorted by key.
    std::string canonical_text() const;
    std::uint64_t content_hash() const;

private:
    const std::string& raw(const std::string& key) const;

    std::map<std::string, std::string> values_;
    mutable std::map<std::string, bool> consumed_;
};

} // namespace lsh
