#include "netcover/model.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace netcover {

int Model::add_variable(const std::string& name, double lower, double upper,
                        VarKind kind) {
    if (name.empty()) throw ModelError("variable name must not be empty");
    if (index_.count(name) != 0) {
        throw ModelError("duplicate variable name: " + name);
    }
    if (kind == VarKind::Binary && (lower != 0.0 || upper != 1.0)) {
        throw ModelError("binary variable must have bounds [0,1]: " + name);
    }
    int id = static_cast<int>(variables_.size());
    variables_.push_back({name, lower, upper, kind});
    index_.emplace(name, id);
    return id;
}

void Model::check_terms(const std::vector<LinearTerm>& terms) const {
    for (const auto& t : terms) {
        if (t.var < 0 || t.var >= static_cast<int>(variables_.size())) {
            throw ModelError("constraint references undeclared variable");
        }
        if (!std::isfinite(t.coeff)) {
            throw ModelError("non-finite coefficient");
        }
    }
}

void Model::add_constraint(LinearConstraint c) {
    check_terms(c.terms);
    if (!std::isfinite(c.rhs)) throw ModelError("non-finite right-hand side");
    constraints_.push_back(std::move(c));
}

void Model::add_indicator(IndicatorConstraint c) {
    check_terms(c.terms);
    if (!std::isfinite(c.rhs)) throw ModelError("non-finite right-hand side");
    if (c.binary_var < 0 || c.binary_var >= static_cast<int>(variables_.size())) {
        throw ModelError("indicator references undeclared variable");
    }
    if (variables_[static_cast<size_t>(c.binary_var)].kind != VarKind::Binary) {
        throw ModelError("indicator variable must be binary");
    }
    if (c.trigger_value != 0 && c.trigger_value != 1) {
        throw ModelError("indicator trigger must be 0 or 1");
    }
    indicators_.push_back(std::move(c));
}

void Model::set_objective(bool minimize, std::vector<LinearTerm> terms) {
    check_terms(terms);
    minimize_ = minimize;
    objective_ = std::move(terms);
}

int Model::variable_index(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

namespace {

std::string fmt_num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void append_terms(std::ostringstream& out, const Model& model,
                  const std::vector<LinearTerm>& terms) {
    bool first = true;
    for (const auto& t : terms) {
        const std::string& name =
            model.variables()[static_cast<size_t>(t.var)].name;
        if (name.empty()) throw ModelError("unnamed variable in row");
        if (std::isnan(t.coeff)) throw ModelError("NaN coefficient in row");
        double mag = std::abs(t.coeff);
        if (first) {
            if (t.coeff < 0.0) out << "- ";
            first = false;
        } else {
            out << (t.coeff < 0.0 ? " - " : " + ");
        }
        if (mag != 1.0) out << fmt_num(mag) << ' ';
        out << name;
    }
    if (first) out << "0";
}

const char* sense_text(RowSense s) {
    switch (s) {
        case RowSense::LessEqual: return "<=";
        case RowSense::Equal: return "=";
        case RowSense::GreaterEqual: return ">=";
    }
    return "<=";
}

}  // namespace

std::string write_lp(const Model& model) {
    std::ostringstream out;
    out << (model.minimize() ? "Minimize" : "Maximize") << "\n obj: ";
    append_terms(out, model, model.objective_terms());
    out << "\nSubject To\n";
    for (const auto& c : model.constraints()) {
        out << ' ' << c.name << ": ";
        append_terms(out, model, c.terms);
        out << ' ' << sense_text(c.sense) << ' ' << fmt_num(c.rhs) << '\n';
    }
    for (const auto& c : model.indicators()) {
        out << ' ' << c.name << ": "
            << model.variables()[static_cast<size_t>(c.binary_var)].name
            << " = " << c.trigger_value << " -> ";
        append_terms(out, model, c.terms);
        out << ' ' << sense_text(c.sense) << ' ' << fmt_num(c.rhs) << '\n';
    }
    out << "Bounds\n";
    for (const auto& v : model.variables()) {
        if (v.kind == VarKind::Binary) continue;
        bool lo_finite = std::isfinite(v.lower);
        bool hi_finite = std::isfinite(v.upper);
        out << ' ';
        if (lo_finite && hi_finite) {
            out << fmt_num(v.lower) << " <= " << v.name
                << " <= " << fmt_num(v.upper);
        } else if (lo_finite) {
            out << v.name << " >= " << fmt_num(v.lower);
        } else if (hi_finite) {
            out << v.name << " <= " << fmt_num(v.upper);
        } else {
            out << v.name << " free";
        }
        out << '\n';
    }
    bool any_binary = false;
    for (const auto& v : model.variables()) {
        if (v.kind == VarKind::Binary) {
            if (!any_binary) {
                out << "Binaries\n";
                any_binary = true;
            }
            out << ' ' << v.name << '\n';
        }
    }
    out << "End\n";
    return out.str();
}

Model lower_indicators(const Model& model,
                       const std::vector<double>& constants) {
    if (constants.size() != model.indicators().size()) {
        throw ModelError("one big-M constant per indicator required");
    }
    Model out;
    for (const auto& v : model.variables()) {
        out.add_variable(v.name, v.lower, v.upper, v.kind);
    }
    out.set_objective(model.minimize(), model.objective_terms());
    for (const auto& c : model.constraints()) out.add_constraint(c);
    for (size_t i = 0; i < model.indicators().size(); ++i) {
        const IndicatorConstraint& ind = model.indicators()[i];
        double m = constants[i];
        if (!std::isfinite(m)) {
            throw ModelError("missing big-M constant for " + ind.name);
        }
        if (ind.sense != RowSense::LessEqual) {
            throw ModelError("only <= indicator rows can be lowered");
        }
        LinearConstraint row;
        row.name = ind.name;
        row.terms = ind.terms;
        row.sense = RowSense::LessEqual;
        if (ind.trigger_value == 1) {
            row.terms.push_back({ind.binary_var, m});
            row.rhs = ind.rhs + m;
        } else {
            row.terms.push_back({ind.binary_var, -m});
            row.rhs = ind.rhs;
        }
        out.add_constraint(std::move(row));
    }
    return out;
}

}  // namespace netcover
