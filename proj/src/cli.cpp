#include "heb/cli.hpp"

#include "heb/error.hpp"
#include "heb/report.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace heb {

Command parse_command(std::string_view name) {
    if (name == "analyze") return Command::Analyze;
    if (name == "certify") return Command::Certify;
    if (name == "exponent") return Command::Exponent;
    if (name == "verify") return Command::Verify;
    if (name == "slope") return Command::Slope;
    if (name == "quadratic") return Command::Quadratic;
    throw Error("unknown command '" + std::string(name) + "'");
}

namespace {

double parse_double(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw Error("not a number: '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        auto next = s.find(sep, pos);
        out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

std::string join_point(const std::vector<double>& x) {
    std::string s = "(";
    for (std::size_t j = 0; j < x.size(); ++j) s += (j ? ", " : "") + fmt(x[j]);
    return s + ")";
}

std::string join_exponents(const std::vector<ExponentVector>& v) {
    std::string s = "{";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + to_string(v[k]);
    return s + "}";
}

std::string join_rationals(const std::vector<Rational>& v) {
    std::string s = "(";
    for (std::size_t j = 0; j < v.size(); ++j) s += (j ? "," : "") + to_string(v[j]);
    return s + ")";
}

CertifyConfig certify_config(const RunConfig& cfg) {
    CertifyConfig c;
    c.seed = cfg.seed;
    c.workers = cfg.workers;
    if (cfg.samples) c.samples = *cfg.samples;
    if (cfg.multistarts) c.multistarts = *cfg.multistarts;
    if (cfg.tau_zero) c.tau_zero = *cfg.tau_zero;
    if (!cfg.tau_axis.empty()) c.tau_axis_schedule = cfg.tau_axis;
    return c;
}

void text_analysis(std::ostream& os, const PolySystem& sys, const SystemNewtonData& nd) {
    os << "variables: ";
    for (std::size_t j = 0; j < sys.n(); ++j) os << (j ? ", " : "") << sys.varnames()[j];
    os << "\n";
    for (std::size_t i = 0; i < sys.p(); ++i) {
        os << sys.names()[i] << ": vertices " << join_exponents(nd.components[i].vertices())
           << (nd.convenience[i].convenient ? ", convenient" : ", not convenient");
        if (!nd.convenience[i].missing_axes.empty()) {
            os << " (no pure power of";
            for (auto j : nd.convenience[i].missing_axes) os << " " << sys.varnames()[j];
            os << ")";
        }
        os << "\n";
    }
    os << "sum: vertices " << join_exponents(nd.sum.vertices()) << "\n";
    os << "faces at infinity: " << nd.faces.size() << "\n";
    for (const auto& f : nd.faces) {
        os << "  face " << f.id << " dim " << f.dim << " support " << join_exponents(f.support_points) << " normal "
           << join_rationals(f.witness_normal) << " value " << to_string(f.value);
        if (f.decomposition) {
            os << " =";
            for (std::size_t i = 0; i < f.decomposition->size(); ++i)
                os << (i ? " + " : " ") << join_exponents((*f.decomposition)[i]);
        }
        os << "\n";
    }
}

void text_verdict(std::ostream& os, const NondegVerdict& v) {
    for (const auto& f : v.faces) {
        os << "face " << f.face_id << ": " << to_string(f.status) << ", objective_min " << fmt(f.objective_min)
           << ", samples " << f.samples;
        if (f.witness) os << ", witness " << join_point(*f.witness);
        if (f.exact_witness) os << " (exact " << join_rationals(*f.exact_witness) << ")";
        os << "\n";
    }
    os << "convenient: " << (v.convenient ? "yes" : "no") << "\n";
    os << "overall: " << to_string(v.overall) << "\n";
}

void text_exponent(std::ostream& os, const ExponentReport& rep) {
    os << "d = " << rep.d << ", n = " << rep.n << ", p = " << rep.p << "\n";
    os << "H = " << to_string(rep.H) << "\n";
    os << "alpha = " << to_string(rep.alpha) << " (" << fmt(rep.alpha_value()) << ")\n";
    os << "beta = " << to_string(rep.beta) << "\n";
    for (const auto& note : rep.notes) os << "note: " << note << "\n";
}

QuadraticBound quadratic_from(const PolySystem& sys) {
    if (sys.p() != 1) throw Error("quadratic: expected a single component, got " + std::to_string(sys.p()));
    const Polynomial& f = sys[0];
    if (f.degree() > 2) throw Error("quadratic: component " + sys.names()[0] + " has degree " + std::to_string(f.degree()));
    const std::size_t n = sys.n();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    double c0 = 0.0;
    for (const auto& [e, c] : f.terms()) {
        const double v = c.get_d();
        std::vector<Eigen::Index> idx;
        for (std::size_t j = 0; j < n; ++j)
            for (int k = 0; k < e[j]; ++k) idx.push_back(static_cast<Eigen::Index>(j));
        if (idx.empty()) c0 = v;
        else if (idx.size() == 1) b(idx[0]) = v;
        else if (idx[0] == idx[1]) A(idx[0], idx[0]) = 2.0 * v;
        else A(idx[0], idx[1]) = A(idx[1], idx[0]) = v;
    }
    return quadratic_bound(A, b, c0);
}

int execute(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
    std::ifstream in(cfg.input_path);
    if (!in) throw Error("cannot open '" + cfg.input_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const PolySystem sys = parse_system(buf.str());
    const bool json = cfg.format == OutputFormat::Json;
    Json doc;
    int status = 0;

    switch (cfg.command) {
        case Command::Analyze: {
            sys.require_nonzero_components();
            const auto nd = analyze_newton(sys);
            if (json) doc = to_json(sys, nd);
            else text_analysis(os, sys, nd);
            break;
        }
        case Command::Certify: {
            sys.require_nonzero_components();
            const auto v = certify_system(sys, certify_config(cfg));
            if (json) doc = to_json(v);
            else text_verdict(os, v);
            if (v.overall == FaceStatus::Degenerate) status = 1;
            break;
        }
        case Command::Exponent: {
            const auto rep = holder_exponent(sys.d(), static_cast<int>(sys.n()), static_cast<int>(sys.p()));
            if (json) doc = to_json(rep);
            else text_exponent(os, rep);
            break;
        }
        case Command::Verify: {
            sys.require_nonzero_components();
            const auto verdict = certify_system(sys, certify_config(cfg));
            const bool established = verdict.convenient && verdict.overall == FaceStatus::NondegenerateProbable;
            const auto rep = holder_exponent(sys.d(), static_cast<int>(sys.n()), static_cast<int>(sys.p()));
            SamplePlan plan;
            plan.box = cfg.box.empty() ? std::vector<Interval>(sys.n(), {-3.0, 3.0}) : cfg.box;
            plan.count = cfg.samples.value_or(2000);
            plan.rings = cfg.rings;
            plan.seed = cfg.seed;
            VerifyConfig vc;
            vc.workers = cfg.workers;
            vc.distance.seed = cfg.seed;
            if (cfg.multistarts) vc.distance.starts = *cfg.multistarts;
            const auto report = verify_bound(sys, rep, plan, vc);
            const std::string label = established ? "hypotheses certified (convenient, nondegenerate_probable)"
                                                  : "hypothesis of the error bound theorem not established";
            if (!established) err << "warning: " << label << "\n";
            if (json) {
                doc = to_json(report);
                doc["certification"] = to_string(verdict.overall);
                doc["convenient"] = verdict.convenient;
                doc["hypothesis"] = established ? "established" : "not established";
            } else {
                os << label << "\n";
                os << "alpha_used = " << to_string(report.alpha_used) << "\n";
                os << "samples = " << report.samples.size() << ", counted = " << report.counted
                   << ", violations = " << report.violations << "\n";
                os << "fitted_c = " << fmt(report.fitted_c) << "\n";
                for (const auto& r : report.rings.rings)
                    os << "ring R = " << fmt(r.radius) << ": slope_floor "
                       << (r.floor ? fmt(*r.floor) : std::string("n/a")) << "\n";
                if (!report.rings.rings.empty()) os << "trend: " << to_string(report.rings.trend) << "\n";
            }
            if (report.violations > 0) status = 1;
            break;
        }
        case Command::Slope: {
            if (cfg.point.empty()) throw Error("slope: --point is required");
            if (cfg.point.size() != sys.n())
                throw DimensionError("slope: --point has " + std::to_string(cfg.point.size()) + " coordinates for " +
                                     std::to_string(sys.n()) + " variables");
            const auto s = slope(sys, cfg.point);
            if (json) {
                doc = to_json(s);
                doc["point"] = cfg.point;
                doc["residual"] = residual(sys, cfg.point);
            } else {
                os << "residual = " << fmt(residual(sys, cfg.point)) << "\n";
                os << "slope = " << fmt(s.value) << "\n";
                os << "lambda = " << join_point(s.lambda) << "\n";
            }
            break;
        }
        case Command::Quadratic: {
            const auto q = quadratic_from(sys);
            if (json) doc = to_json(q);
            else {
                std::vector<double> ev(q.eigenvalues.data(), q.eigenvalues.data() + q.eigenvalues.size());
                std::vector<double> xb(q.critical_point.data(), q.critical_point.data() + q.critical_point.size());
                os << "eigenvalues = " << join_point(ev) << "\n";
                os << "lambda = " << fmt(q.lambda_min_nonzero) << "\n";
                os << "constant = " << fmt(q.constant) << "\n";
                os << "critical_point = " << join_point(xb) << "\n";
                os << "critical_value = " << fmt(q.critical_value) << "\n";
            }
            break;
        }
    }
    if (json) os << doc.dump(2) << "\n";
    return status;
}

}  // namespace

std::vector<Interval> parse_box(std::string_view text) {
    std::vector<Interval> out;
    for (auto part : split(text, ',')) {
        auto colon = part.find(':');
        if (colon == std::string_view::npos) throw Error("box side '" + std::string(part) + "' is not lo:hi");
        Interval iv{parse_double(part.substr(0, colon)), parse_double(part.substr(colon + 1))};
        if (!(iv.first <= iv.second)) throw Error("box side '" + std::string(part) + "' is empty");
        out.push_back(iv);
    }
    return out;
}

std::vector<double> parse_list(std::string_view text) {
    std::vector<double> out;
    for (auto part : split(text, ',')) out.push_back(parse_double(part));
    return out;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.out_path) {
            std::ofstream file(*cfg.out_path);
            if (!file) throw Error("cannot write '" + *cfg.out_path + "'");
            return execute(cfg, file, err);
        }
        return execute(cfg, out, err);
    } catch (const EmptyFeasibleSet& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace heb
