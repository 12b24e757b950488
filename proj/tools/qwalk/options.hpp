#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwalk/dynamics.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/metrology.hpp"

namespace qwalk::cli {

/// Bad flag values or combinations; reported with exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GraphOptions {
    std::string family;
    std::size_t n = 0, d = 0, p = 0, q = 0;
    std::string couplings;
    CLI::Option* n_opt = nullptr;
    CLI::Option* d_opt = nullptr;
    CLI::Option* p_opt = nullptr;
    CLI::Option* q_opt = nullptr;
    CLI::Option* couplings_opt = nullptr;

    void add_to(CLI::App& app);
    GraphSpec spec() const;
};

struct PrepOptions {
    std::string prep = "optimal";
    std::string phi;  // "", "opt" or a number

    void add_to(CLI::App& app);
    /// Realises the preparation; --phi selects the balanced xi_-/xi_+ state.
    Preparation resolve(const GraphSpec& spec, double gamma, double t) const;
    std::string describe() const;
};

struct PovmOptions {
    std::string subset;
    std::size_t face = 0;
    bool central = false;
    std::size_t first_m = 0;
    double beta_odd = -1.0, beta_even = -1.0;
    CLI::Option* subset_opt = nullptr;
    CLI::Option* face_opt = nullptr;
    CLI::Option* central_opt = nullptr;
    CLI::Option* first_m_opt = nullptr;
    CLI::Option* beta_odd_opt = nullptr;
    CLI::Option* beta_even_opt = nullptr;

    void add_to(CLI::App& app);
    PositionPovm resolve(const GraphSpec& spec) const;
};

std::vector<double> parse_real_list(const std::string& text, const std::string& flag);
std::vector<std::size_t> parse_label_list(const std::string& text, const std::string& flag);

nlohmann::json graph_json(const GraphSpec& spec);
nlohmann::json complex_json(const ComplexVector& v);
nlohmann::json real_json(const RealVector& v);
/// Finite numbers as-is, infinities as null.
nlohmann::json number_or_null(double v);

}  // namespace qwalk::cli
