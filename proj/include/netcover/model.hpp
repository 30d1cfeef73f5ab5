#pragma once

#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "netcover/network.hpp"

namespace netcover {

inline constexpr double kInfBound = std::numeric_limits<double>::infinity();

enum class VarKind { Continuous, Binary };

enum class RowSense { LessEqual, Equal, GreaterEqual };

struct LinearTerm {
    int var = 0;
    double coeff = 0.0;
};

struct LinearConstraint {
    std::string name;
    std::vector<LinearTerm> terms;
    RowSense sense = RowSense::LessEqual;
    double rhs = 0.0;
};

/// binary_var = trigger_value  implies  the linear constraint holds.
struct IndicatorConstraint {
    std::string name;
    int binary_var = 0;
    int trigger_value = 1;
    std::vector<LinearTerm> terms;
    RowSense sense = RowSense::LessEqual;
    double rhs = 0.0;
};

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Solver-agnostic MILP: variables with bounds and integrality, linear rows,
/// indicator rows, and a linear objective. Value semantics throughout.
class Model {
  public:
    struct Variable {
        std::string name;
        double lower = 0.0;
        double upper = 0.0;
        VarKind kind = VarKind::Continuous;
    };

    int add_variable(const std::string& name, double lower, double upper,
                     VarKind kind);
    void add_constraint(LinearConstraint c);
    void add_indicator(IndicatorConstraint c);
    void set_objective(bool minimize, std::vector<LinearTerm> terms);

    int variable_index(const std::string& name) const;  // -1 when absent
    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<LinearConstraint>& constraints() const {
        return constraints_;
    }
    const std::vector<IndicatorConstraint>& indicators() const {
        return indicators_;
    }
    bool minimize() const { return minimize_; }
    const std::vector<LinearTerm>& objective_terms() const {
        return objective_;
    }

  private:
    void check_terms(const std::vector<LinearTerm>& terms) const;

    std::vector<Variable> variables_;
    std::unordered_map<std::string, int> index_;
    std::vector<LinearConstraint> constraints_;
    std::vector<IndicatorConstraint> indicators_;
    bool minimize_ = true;
    std::vector<LinearTerm> objective_;
};

/// Deterministic LP-text serialization (Minimize / Subject To / Bounds /
/// Binaries / End); indicator rows use "name: bin = v -> row".
std::string write_lp(const Model& model);

/// Replaces every indicator by its big-M relaxation: (z = 1 -> a.x <= b)
/// becomes a.x + M z <= b + M, (z = 0 -> a.x <= b) becomes a.x - M z <= b.
/// `constants` is aligned with model.indicators().
Model lower_indicators(const Model& model,
                       const std::vector<double>& constants);

}  // namespace netcover
