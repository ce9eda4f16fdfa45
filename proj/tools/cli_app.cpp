#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "wquant/approx.hpp"
#include "wquant/errors.hpp"
#include "wquant/factor.hpp"
#include "wquant/quadrature.hpp"
#include "wquant/quantizer.hpp"

namespace wquant::cli {
namespace {

using nlohmann::json;

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json jnum(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

json jvec(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(jnum(x));
    return a;
}

// CSV outputs start with the resolved configuration as comment lines.
void csv_header(std::ostream& out, const std::string& command, const json& config) {
    out << "# wquant " << command << "\n";
    out << "# config " << config.dump() << "\n";
}

WeightFunction parse_weight(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParameterOutOfRange(std::string("weight is not valid JSON: ") + e.what());
    }
    return WeightFunction::from_json(j);
}

ProblemExponents make_exponents(const std::string& p, const std::string& q, int r) {
    return {Exponent::parse(p), Exponent::parse(q), r};
}

// Shared inputs of approximate / integrate / convergence.
struct Problem {
    std::string f = "gauss";
    std::string rho = R"({"family":"gaussian","sigma":1})";
    std::string psi = R"({"family":"one"})";
    std::string kappa;  // empty: the optimal quantizer omega = rho/psi
    std::string p = "inf";
    std::string q = "1";
    int r = 1;
    int n = 16;
    double tol = 1e-10;
};

void add_problem_options(CLI::App* sub, Problem& pr, bool with_q) {
    sub->add_option("--f", pr.f, "test function: exp, gauss, sinexp, rational")->capture_default_str();
    sub->add_option("--rho", pr.rho, "density rho as weight JSON")->capture_default_str();
    sub->add_option("--psi", pr.psi, "smoothness weight psi as weight JSON")->capture_default_str();
    sub->add_option("--kappa", pr.kappa, "quantizer as weight JSON (default: omega = rho/psi)");
    sub->add_option("--p", pr.p, "smoothness exponent p (number or inf)")->capture_default_str();
    if (with_q) sub->add_option("--q", pr.q, "error exponent q (number or inf)")->capture_default_str();
    sub->add_option("--r", pr.r, "smoothness order r")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--n", pr.n, "number of cells per half line")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--tol", pr.tol, "relative tolerance of the numerical kernels")->capture_default_str();
}

struct Resolved {
    FunctionWithDerivatives f;
    WeightFunction rho;
    WeightFunction psi;
    WeightFunction kappa;
    ProblemExponents exps;
};

Resolved resolve(const Problem& pr) {
    WeightFunction rho = parse_weight(pr.rho);
    WeightFunction psi = parse_weight(pr.psi);
    WeightFunction kappa = pr.kappa.empty() ? omega_of(rho, psi) : parse_weight(pr.kappa);
    // Knots live on rho's domain.
    if (rho.domain().lo != kappa.domain().lo || rho.domain().hi != kappa.domain().hi) {
        kappa = kappa.with_domain(rho.domain());
    }
    return {test_functions::by_name(pr.f), rho, psi, kappa, make_exponents(pr.p, pr.q, pr.r)};
}

json problem_config(const Problem& pr, const Resolved& rs) {
    return {{"f", pr.f},
            {"rho", rs.rho.to_json()},
            {"psi", rs.psi.to_json()},
            {"kappa", rs.kappa.to_json()},
            {"kappa_is_omega", pr.kappa.empty()},
            {"exponents", to_json(rs.exps)},
            {"n", pr.n},
            {"tol", pr.tol}};
}

// ---------------------------------------------------------------------------
// knots
// ---------------------------------------------------------------------------

struct KnotsOpts {
    std::string quantizer = "exp";
    std::optional<double> a;
    std::optional<double> c;
    double mu = 0.0;
    double alpha = 1.0;
    int n = 4;
    std::string domain = "half";
    std::string kappa;
    bool numeric = false;
};

double require(const std::optional<double>& v, const char* flag) {
    if (!v) throw ParameterOutOfRange(std::string("missing ") + flag);
    return *v;
}

int cmd_knots(const KnotsOpts& o, std::ostream& out) {
    const MassMethod method = o.numeric ? MassMethod::Numeric : MassMethod::Auto;
    const bool real = o.domain == "real";
    std::optional<WeightFunction> kappa;
    if (o.quantizer == "exp") {
        kappa = WeightFunction::exponential_kernel(require(o.a, "--a"));
    } else if (o.quantizer == "student") {
        kappa = WeightFunction::student_quantizer(require(o.a, "--a"));
    } else if (o.quantizer == "json") {
        if (o.kappa.empty()) throw ParameterOutOfRange("missing --kappa");
        kappa = parse_weight(o.kappa);
    } else if (o.quantizer != "lognormal") {
        throw ParameterOutOfRange("unknown quantizer '" + o.quantizer + "'");
    }

    KnotVector kv;
    if (o.quantizer == "lognormal") {
        if (real) throw ParameterOutOfRange("the log-normal quantizer lives on the half line");
        const double c = require(o.c, "--c");
        kv = o.numeric ? knots_halfline(WeightFunction::lognormal_quantizer(c, o.mu), o.alpha, o.n, method)
                       : knots_lognormal(c, o.alpha, o.mu, o.n);
    } else if (real) {
        kv = knots_realline(*kappa, o.alpha, o.n, method);
    } else {
        WeightFunction k = *kappa;
        if (std::isinf(k.domain().lo)) k = k.with_domain({0.0, k.domain().hi});
        kv = knots_halfline(k, o.alpha, o.n, method);
    }

    json cfg = {{"quantizer", kv.quantizer.to_json()}, {"alpha", o.alpha}, {"n", o.n},
                {"domain", o.domain},                  {"numeric", o.numeric}};
    csv_header(out, "knots", cfg);
    out << "# total_mass " << num(kv.total_mass) << " closed_form " << (kv.closed_form ? "true" : "false") << "\n";
    out << "index,knot\n";
    // Real-line knots are indexed -n..n.
    const long offset = real ? -static_cast<long>(kv.cells() / 2) : 0;
    for (std::size_t i = 0; i < kv.knots.size(); ++i) {
        out << static_cast<long>(i) + offset << "," << num(kv.knots[i]) << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// approximate
// ---------------------------------------------------------------------------

int cmd_approximate(const Problem& pr, const std::string& form, std::ostream& out) {
    const Resolved rs = resolve(pr);
    const Tolerance tol(pr.tol);
    const double al = alpha(rs.exps);
    const KnotVector kv = knots_for(rs.kappa, al, pr.n);

    PiecewisePolynomial P;
    if (form == "taylor") {
        P = build_taylor(rs.f, kv, pr.r);
    } else if (form == "lagrange") {
        P = build_lagrange(rs.f.derivative(0), kv, pr.r);
    } else {
        throw ParameterOutOfRange("unknown form '" + form + "'");
    }
    const double err = approximation_error(rs.f.derivative(0), P, rs.rho, rs.exps.q, tol);
    const double semi = smoothness_seminorm(rs.f, rs.psi, rs.exps.p, pr.r, rs.rho.domain(), tol);
    const WeightFunction omega = omega_of(rs.rho, rs.psi);
    const double e = e_pq_numeric(omega, rs.kappa, rs.exps, tol);
    const double kmass = std::pow(kv.total_mass, al);

    json cells = json::array();
    for (const auto& c : P.cells) {
        json jc = {{"lo", jnum(c.lo)}, {"hi", jnum(c.hi)}, {"anchor", jnum(c.anchor)}};
        if (P.form == PolyForm::Taylor) {
            jc["coefficients"] = jvec(c.coeffs);
        } else {
            jc["nodes"] = jvec(c.nodes);
            jc["values"] = jvec(c.values);
        }
        cells.push_back(jc);
    }

    json cfg = problem_config(pr, rs);
    cfg["form"] = form;
    json res = {{"config", cfg},
                {"exponents",
                 {{"p", rs.exps.p.str()},
                  {"q", rs.exps.q.str()},
                  {"r", rs.exps.r},
                  {"alpha", al},
                  {"rate", rs.exps.rate()},
                  {"c1", c1_constant(rs.exps)}}},
                {"knots", jvec(kv.knots)},
                {"cells", cells},
                {"error", err},
                {"seminorm", semi},
                {"e_pq", jnum(e)},
                {"kappa_mass_alpha", kmass}};
    if (std::isinf(e)) {
        res["bound"] = "inf";
        res["bound_note"] = "E is infinite for this quantizer, the bound is vacuous";
    } else {
        const double bound = theorem1_bound(rs.exps, kmass, e, kv.cells(), semi);
        res["bound"] = bound;
        res["within_bound"] = err <= bound + 1e-9;
    }
    out << res.dump(2) << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------
// integrate / convergence
// ---------------------------------------------------------------------------

int cmd_integrate(Problem pr, std::ostream& out) {
    pr.q = "1";
    const Resolved rs = resolve(pr);
    const QuadratureResult q = integrate_weighted(rs.f, rs.rho, rs.psi, rs.kappa, rs.exps, pr.n, Tolerance(pr.tol));
    const double ref = reference_integral(rs.f.derivative(0), rs.rho);
    json res = {{"config", problem_config(pr, rs)},
                {"value", q.value},
                {"reference", ref},
                {"error", std::abs(q.value - ref)},
                {"cells", q.cells},
                {"rule", q.rule}};
    out << res.dump(2) << "\n";
    return kOk;
}

int cmd_convergence(Problem pr, const std::vector<int>& ns, std::ostream& out) {
    pr.q = "1";
    const Resolved rs = resolve(pr);
    const auto rows = convergence_study(rs.f, rs.rho, rs.psi, rs.kappa, rs.exps, ns);
    json cfg = problem_config(pr, rs);
    cfg.erase("n");
    cfg["n_list"] = ns;
    csv_header(out, "convergence", cfg);
    out << "n,error,order\n";
    for (const auto& row : rows) out << row.n << "," << num(row.error) << "," << num(row.order) << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------
// fctr
// ---------------------------------------------------------------------------

struct FctrOpts {
    std::string family;
    double sigma = 1.0;
    double lambda = 2.0;
    double mu = 0.0;
    double nu = 3.0;
    double b = 1.0;
    std::optional<double> a;
    std::optional<double> c;
    std::optional<double> alpha;
    std::optional<double> sigma2;
    std::string p = "1";
    std::string q = "1";
    int r = 1;
    bool optimize = false;
    bool numeric = false;
    bool scan = false;
    std::string rho;
    std::string psi = R"({"family":"one"})";
    std::string kappa;
    double tol = 1e-10;
};

struct Weights {
    WeightFunction rho;
    WeightFunction psi;
    WeightFunction kappa;
};

class FctrCommand {
public:
    explicit FctrCommand(const FctrOpts& o) : o_(o), exps_(make_exponents(o.p, o.q, o.r)) {
        al_ = o.alpha ? *o.alpha : alpha(exps_);
    }

    FactorReport run() {
        if (o_.family == "generic") return generic();
        std::optional<double> param = given_parameter();
        bool optimized = false;
        if (o_.optimize) {
            const Interval br = bracket();
            auto objective = [&](double t) {
                try {
                    return evaluate(t).fctr;
                } catch (const ParameterOutOfRange&) {
                    return kInf;
                }
            };
            const Tolerance tol(1e-10);
            const Minimum m = o_.scan ? minimize_scalar_scan(objective, br, tol) : minimize_scalar(objective, br, tol);
            param = m.argmin;
            optimized = true;
        }
        FactorReport rep = evaluate(param);
        rep.params["optimized"] = optimized;
        if (optimized) rep.params["search_bracket"] = {jnum(bracket().lo), jnum(bracket().hi)};
        return rep;
    }

    json config() const {
        json j = {{"family", o_.family}, {"exponents", to_json(exps_)}, {"alpha", al_},
                  {"optimize", o_.optimize}, {"numeric", o_.numeric}, {"scan", o_.scan}};
        const std::string& f = o_.family;
        if (f == "gauss-gauss" || f == "gauss-exp") j.update({{"sigma", o_.sigma}, {"lambda", o_.lambda}});
        if (f == "lognormal") j.update({{"sigma", o_.sigma}, {"mu", o_.mu}});
        if (f == "logistic") j.update({{"lambda", o_.lambda}, {"b", o_.b}});
        if (f == "student") j.update({{"nu", o_.nu}, {"b", o_.b}});
        if (o_.a) j["a"] = *o_.a;
        if (o_.c) j["c"] = *o_.c;
        if (o_.sigma2) j["sigma2"] = *o_.sigma2;
        if (f == "example1") {
            // Exponents are fixed for this example.
            j["exponents"] = to_json(ProblemExponents(Exponent::infinity(), Exponent(1.0), 1));
            j["alpha"] = 2.0;
        }
        return j;
    }

private:
    std::optional<double> given_parameter() const {
        if (o_.family == "lognormal") return o_.c;
        if (o_.family == "example1") return o_.sigma2;
        return o_.a;
    }

    Interval bracket() const {
        const std::string& f = o_.family;
        if (f == "gauss-gauss") return {1e-6, 10.0 * std::max(1.0, gauss_gauss_a_star(o_.sigma, o_.lambda, al_))};
        if (f == "gauss-exp") return {1e-6, 10.0 * std::max(1.0, gauss_exp_a_star(o_.sigma, o_.lambda, al_))};
        if (f == "lognormal") return {al_, al_ + 20.0};
        if (f == "logistic") return {1e-9, o_.lambda - o_.b};
        if (f == "student") return {al_, o_.nu + 1.0 - o_.b};
        if (f == "example1") return {0.5, 20.0};
        throw ParameterOutOfRange("--optimize is not available for family '" + f + "'");
    }

    // The numeric path needs exponents that actually produce alpha.
    void check_alpha_consistent() const {
        if (std::abs(alpha(exps_) - al_) > 1e-12) {
            throw ParameterOutOfRange("--alpha conflicts with --p/--q/--r, which the numeric path needs");
        }
    }

    Weights weights(std::optional<double> param) const {
        const std::string& f = o_.family;
        if (f == "gauss-gauss" || f == "gauss-exp") {
            const double a = param ? *param : (f == "gauss-gauss" ? gauss_gauss_a_star(o_.sigma, o_.lambda, al_)
                                                                  : gauss_exp_a_star(o_.sigma, o_.lambda, al_));
            return {WeightFunction::gaussian_density(o_.sigma),
                    f == "gauss-gauss" ? WeightFunction::gaussian_shape(o_.lambda)
                                       : WeightFunction::exponential_shape(o_.lambda),
                    WeightFunction::exponential_kernel(a)};
        }
        if (f == "lognormal") {
            const double c = param ? *param : fctr_lognormal_pleq(o_.sigma, o_.mu, al_).parameter.value();
            return {WeightFunction::lognormal_density(o_.mu, o_.sigma), WeightFunction::constant_one(Interval::half_line()),
                    WeightFunction::lognormal_quantizer(c, o_.mu)};
        }
        if (f == "logistic") {
            const double a = param ? *param : logistic_a_opt(o_.lambda, o_.b, al_);
            return {WeightFunction::logistic_density(1.0 / o_.lambda), WeightFunction::exponential_shape_b(o_.b),
                    WeightFunction::exponential_kernel(a)};
        }
        if (f == "student") {
            const double a = param ? *param : fctr_bound_student(o_.nu, o_.b, al_, std::nullopt, exps_.p_le_q()).parameter.value();
            return {WeightFunction::student_density(o_.nu), WeightFunction::student_shape(o_.nu, o_.b),
                    WeightFunction::student_quantizer(a)};
        }
        if (f == "example1") {
            if (!param) throw ParameterOutOfRange("missing --sigma2");
            if (!(*param > 0.0)) throw ParameterOutOfRange("sigma^2 must be positive");
            return {WeightFunction::gaussian_density(1.0), WeightFunction::constant_one(),
                    WeightFunction::gaussian_density(std::sqrt(*param))};
        }
        throw ParameterOutOfRange("unknown family '" + f + "'");
    }

    FactorReport numeric(std::optional<double> param) const {
        const Weights w = weights(param);
        const ProblemExponents e = o_.family == "example1" ? ProblemExponents(Exponent::infinity(), Exponent(1.0), 1) : exps_;
        if (o_.family != "example1") check_alpha_consistent();
        FactorReport rep = fctr_numeric(w.rho, w.psi, w.kappa, e, Tolerance(o_.tol));
        rep.family = o_.family;
        return rep;
    }

    FactorReport evaluate(std::optional<double> param) const {
        if (o_.numeric) return numeric(param);
        const std::string& f = o_.family;
        if (f == "gauss-gauss") return fctr_gauss_gauss(o_.sigma, o_.lambda, exps_at_alpha(), param);
        if (f == "gauss-exp") return fctr_gauss_exp(o_.sigma, o_.lambda, exps_at_alpha(), param);
        if (f == "lognormal") {
            if (exps_.p_le_q()) return fctr_lognormal_pleq(o_.sigma, o_.mu, al_, param);
            if (exps_.p.is_infinite() && exps_.q == Exponent(1.0)) return fctr_lognormal_int(o_.sigma, o_.mu, al_, param);
            // No closed form in between: fall back to quadrature.
            if (!param) throw ParameterOutOfRange("log-normal with these exponents needs --c");
            return numeric(param);
        }
        if (f == "logistic") return fctr_bound_logistic(o_.lambda, o_.b, al_, param);
        if (f == "student") return fctr_bound_student(o_.nu, o_.b, al_, param, exps_.p_le_q());
        if (f == "example1") return example1(param);
        throw ParameterOutOfRange("unknown family '" + f + "'");
    }

    // The Gaussian families take full exponents; --alpha is only honoured when it agrees.
    ProblemExponents exps_at_alpha() const {
        check_alpha_consistent();
        return exps_;
    }

    FactorReport example1(std::optional<double> sigma2) const {
        if (!sigma2) throw ParameterOutOfRange("missing --sigma2");
        const double s2 = *sigma2;
        const Weights w = weights(sigma2);
        FactorReport rep;
        rep.family = "example1";
        rep.kind = FactorKind::ExactClosedForm;
        rep.fctr = fctr_example_gaussian_variance(s2);
        rep.kappa_mass_alpha = std::pow(quantizer_mass(w.kappa, 2.0), 2.0);
        rep.omega_mass_alpha = std::pow(quantizer_mass(w.rho, 2.0), 2.0);
        rep.e_pq = rep.fctr * rep.omega_mass_alpha / rep.kappa_mass_alpha;
        rep.parameter_name = "sigma2";
        rep.parameter = s2;
        rep.params = {{"exponents", to_json(ProblemExponents(Exponent::infinity(), Exponent(1.0), 1))}};
        return rep;
    }

    FactorReport generic() const {
        if (o_.rho.empty() || o_.kappa.empty()) throw ParameterOutOfRange("generic needs --rho and --kappa");
        if (o_.optimize) throw ParameterOutOfRange("--optimize is not available for family 'generic'");
        check_alpha_consistent();
        FactorReport rep = fctr_numeric(parse_weight(o_.rho), parse_weight(o_.psi), parse_weight(o_.kappa), exps_,
                                        Tolerance(o_.tol));
        rep.family = "generic";
        return rep;
    }

    FctrOpts o_;
    ProblemExponents exps_;
    double al_ = 1.0;
};

int cmd_fctr(const FctrOpts& o, std::ostream& out) {
    FctrCommand cmd(o);
    const FactorReport rep = cmd.run();
    json j = rep.to_json();
    j["config"] = cmd.config();
    out << j.dump(2) << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------
// tables / example1-curve
// ---------------------------------------------------------------------------

// Table labels such as "p=2,r=1" become "p=2;r=1" to keep the CSV flat.
std::string label_field(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    return s;
}

int cmd_tables(const std::string& dir, std::ostream& out) {
    std::filesystem::create_directories(dir);
    const auto cells = published_tables();
    std::map<std::string, std::vector<const TableCell*>> by_table;
    std::vector<std::string> order;
    for (const auto& c : cells) {
        if (!by_table.count(c.table)) order.push_back(c.table);
        by_table[c.table].push_back(&c);
    }
    csv_header(out, "tables", {{"out_dir", dir}});
    out << "table,file,cells,matched\n";
    std::size_t total = 0;
    std::size_t matched = 0;
    for (const auto& name : order) {
        const auto path = std::filesystem::path(dir) / (name + ".csv");
        std::ofstream f(path);
        if (!f) throw ParameterOutOfRange("cannot write " + path.string());
        csv_header(f, "tables", {{"table", name}});
        f << "row,column,published,rounded,unrounded,definition_rounded,definition_unrounded,match\n";
        std::size_t ok = 0;
        for (const TableCell* c : by_table[name]) {
            f << label_field(c->row) << "," << label_field(c->column) << "," << round3(c->published) << "," << round3(c->value) << ","
              << num(c->value) << "," << (c->definition_value ? round3(*c->definition_value) : "") << ","
              << (c->definition_value ? num(*c->definition_value) : "") << ","
              << (c->matches() ? "match" : "MISMATCH") << "\n";
            ok += c->matches() ? 1 : 0;
        }
        out << name << "," << path.string() << "," << by_table[name].size() << "," << ok << "\n";
        total += by_table[name].size();
        matched += ok;
    }
    out << "# total " << total << " matched " << matched << "\n";
    return kOk;
}

int cmd_example1_curve(double from, double to, int points, const std::vector<double>& grid, std::ostream& out) {
    std::vector<double> xs = grid;
    if (xs.empty()) {
        if (!(from > 0.0) || !(to > from) || points < 2) throw ParameterOutOfRange("need 0 < from < to and points >= 2");
        for (int i = 0; i < points; ++i) {
            // Snap to 12 digits so grid values such as 1 and 0.5 come out exact.
            const double v = from + (to - from) * i / (points - 1);
            xs.push_back(std::round(v * 1e12) / 1e12);
        }
    }
    csv_header(out, "example1-curve", {{"sigma2", xs}});
    out << "sigma2,fctr\n";
    for (double s2 : xs) out << num(s2) << "," << num(fctr_example_gaussian_variance(s2)) << "\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantizer-driven knots, weighted approximation and quadrature, and mismatch factors"};
    app.name("wquant");
    app.require_subcommand(1);

    KnotsOpts ko;
    auto* knots = app.add_subcommand("knots", "emit the knot vector of a quantizer as CSV");
    knots->add_option("--quantizer", ko.quantizer, "exp (e^{-a|x|}), student ((1+|x|)^{-a}), lognormal, json")
        ->capture_default_str();
    knots->add_option("--a", ko.a, "exponent a of the exp / student quantizer");
    knots->add_option("--c", ko.c, "exponent c of the log-normal quantizer");
    knots->add_option("--mu", ko.mu, "log-normal location mu")->capture_default_str();
    knots->add_option("--alpha", ko.alpha, "alpha = r - 1/p + 1/q")->required();
    knots->add_option("--n", ko.n, "cells per half line")->required()->check(CLI::PositiveNumber);
    knots->add_option("--domain", ko.domain, "half or real")->check(CLI::IsMember({"half", "real"}))->capture_default_str();
    knots->add_option("--kappa", ko.kappa, "quantizer as weight JSON (with --quantizer json)");
    knots->add_flag("--numeric", ko.numeric, "invert the mass numerically instead of using closed forms");

    Problem ap;
    std::string form = "taylor";
    auto* approx = app.add_subcommand("approximate", "piecewise polynomial approximation with error and bound (JSON)");
    add_problem_options(approx, ap, true);
    approx->add_option("--form", form, "taylor or lagrange")->check(CLI::IsMember({"taylor", "lagrange"}))
        ->capture_default_str();

    Problem ip;
    auto* integ = app.add_subcommand("integrate", "weighted quadrature of a test function (JSON, q = 1)");
    add_problem_options(integ, ip, false);

    Problem cp;
    std::vector<int> ns = {4, 8, 16, 32, 64, 128, 256};
    auto* conv = app.add_subcommand("convergence", "quadrature errors and observed orders (CSV n,error,order)");
    add_problem_options(conv, cp, false);
    conv->add_option("--n-list", ns, "comma separated cell counts")->delimiter(',')->capture_default_str();

    FctrOpts fo;
    auto* fctr = app.add_subcommand("fctr", "mismatch factor report (JSON)");
    fctr->add_option("--family", fo.family, "gauss-gauss, gauss-exp, lognormal, logistic, student, example1, generic")
        ->required()
        ->check(CLI::IsMember({"gauss-gauss", "gauss-exp", "lognormal", "logistic", "student", "example1", "generic"}));
    fctr->add_option("--sigma", fo.sigma, "Gaussian / log-normal sigma")->capture_default_str();
    fctr->add_option("--lambda", fo.lambda, "psi scale (gauss-*), logistic rate lambda")->capture_default_str();
    fctr->add_option("--mu", fo.mu, "log-normal mu")->capture_default_str();
    fctr->add_option("--nu", fo.nu, "Student degrees of freedom")->capture_default_str();
    fctr->add_option("--b", fo.b, "psi exponent b (logistic, student)")->capture_default_str();
    fctr->add_option("--a", fo.a, "quantizer parameter a");
    fctr->add_option("--c", fo.c, "log-normal quantizer parameter c");
    fctr->add_option("--alpha", fo.alpha, "alpha, overriding the value from p, q, r");
    fctr->add_option("--sigma2", fo.sigma2, "quantizer variance (example1)");
    fctr->add_option("--p", fo.p, "p (number or inf)")->capture_default_str();
    fctr->add_option("--q", fo.q, "q (number or inf)")->capture_default_str();
    fctr->add_option("--r", fo.r, "r")->capture_default_str()->check(CLI::PositiveNumber);
    fctr->add_flag("--optimize", fo.optimize, "minimize over the free quantizer parameter");
    fctr->add_flag("--scan", fo.scan, "with --optimize: grid the bracket before refining");
    fctr->add_flag("--numeric", fo.numeric, "use quadrature instead of closed forms");
    fctr->add_option("--rho", fo.rho, "generic: density as weight JSON");
    fctr->add_option("--psi", fo.psi, "generic: psi as weight JSON")->capture_default_str();
    fctr->add_option("--kappa", fo.kappa, "generic: quantizer as weight JSON");
    fctr->add_option("--tol", fo.tol, "relative tolerance of the numeric path")->capture_default_str();

    std::string out_dir = "tables";
    auto* tables = app.add_subcommand("tables", "recompute the published factor tables, one CSV per table");
    tables->add_option("--out-dir", out_dir, "output directory")->capture_default_str();

    double from = 0.3;
    double to = 4.0;
    int points = 38;
    std::vector<double> grid;
    auto* curve = app.add_subcommand("example1-curve", "FCTR of a Gaussian quantizer against sigma^2 (CSV)");
    curve->add_option("--from", from, "first sigma^2")->capture_default_str();
    curve->add_option("--to", to, "last sigma^2")->capture_default_str();
    curve->add_option("--points", points, "number of grid points")->capture_default_str();
    curve->add_option("--grid", grid, "explicit comma separated sigma^2 values")->delimiter(',');

    std::vector<const char*> argv{"wquant"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadParameters;
    }

    try {
        if (*knots) return cmd_knots(ko, out);
        if (*approx) return cmd_approximate(ap, form, out);
        if (*integ) return cmd_integrate(ip, out);
        if (*conv) return cmd_convergence(cp, ns, out);
        if (*fctr) return cmd_fctr(fo, out);
        if (*tables) return cmd_tables(out_dir, out);
        if (*curve) return cmd_example1_curve(from, to, points, grid, out);
    } catch (const NonConvergence& e) {
        err << "error: " << e.what() << "\n";
        return kNoConvergence;
    } catch (const NoSignChange& e) {
        err << "error: " << e.what() << "\n";
        return kNoConvergence;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kBadParameters;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kBadParameters;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kBadParameters;
    }
    return kBadParameters;
}

}  // namespace wquant::cli
