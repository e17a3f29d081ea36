#include "jetstress/cli.hpp"

#include "jetstress/checks.hpp"
#include "jetstress/config.hpp"
#include "jetstress/signs.hpp"
#include "jetstress/stress.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace jetstress {
namespace {

struct RunConfig {
    std::string command;
    std::string suite;
    std::vector<std::string> inputs;
    int dim = 0;
    int order = -1;
    int grid = 5;
    std::uint64_t seed = 1;
    int trials = 10;
    std::string mode;
    double tol = 1e-10;
    std::string face;
    std::string subbody;
    bool iterated = false;
    std::string flip;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Arithmetic resolve_mode(const std::string& flag)
{
    std::string mode = flag;
    if (mode.empty()) {
        const char* env = std::getenv("JETSTRESS_MODE");
        mode = env && *env ? env : "rational";
    }
    if (mode == "rational") return Arithmetic::rational;
    if (mode == "float") return Arithmetic::floating;
    throw UsageError("mode must be `rational` or `float`, got `" + mode + "`");
}

template <Scalar T> bool within(const T& residual, double tol)
{
    if constexpr (std::same_as<T, Rational>) {
        (void)tol;
        return residual == 0;
    } else {
        return std::fabs(residual) <= tol;
    }
}

template <Scalar T> std::string num(const T& x) { return format_scalar(x); }

// `key   value` lines with the keys padded to a common width, then the same
// data as a `key=value` block.
class Report {
public:
    void add(std::string key, std::string value) { rows_.emplace_back(std::move(key), std::move(value)); }
    void write(std::ostream& out, const std::string& title) const
    {
        std::size_t width = 0;
        for (const auto& [k, v] : rows_) width = std::max(width, k.size());
        out << title << "\n";
        for (const auto& [k, v] : rows_) out << "  " << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << "\n";
        out << "[key-value]\n";
        for (const auto& [k, v] : rows_) out << k << "=" << v << "\n";
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

StressFile load_stress(const std::string& path) { return parse_stress_text(read_text_file(path)); }
SectionField<Rational> load_section(const std::string& path) { return parse_section_text(read_text_file(path)); }

const StressDensity<Rational>& require_simple(const StressFile& f, const std::string& what)
{
    if (!f.holonomic) throw DomainError(what + ": needs a holonomic stress file");
    if (f.holonomic->order() != 1) {
        throw DomainError(what + ": needs a simple stress (order=1), file has order=" + std::to_string(f.holonomic->order()));
    }
    return *f.holonomic;
}

void require_compatible(int sn, int sm, const SectionField<Rational>& w, const RBox& domain)
{
    if (sn != w.dim() || sm != w.fiber()) {
        throw DomainError("incompatible inputs: stress has dim=" + std::to_string(sn) + " fiber=" + std::to_string(sm) +
                          ", section has dim=" + std::to_string(w.dim()) + " fiber=" + std::to_string(w.fiber()));
    }
    if (!(domain == w.domain())) {
        throw DomainError("incompatible inputs: stress domain " + domain.to_string() + " vs section domain " + w.domain().to_string());
    }
}

// ---- commands ----

int cmd_check(const RunConfig& cfg, std::ostream& out)
{
    if (!is_check_suite(cfg.suite)) throw UsageError("unknown suite `" + cfg.suite + "` (exterior, currents, jets, stress, all)");
    if (cfg.dim > 5) throw UsageError("--dim " + std::to_string(cfg.dim) + " exceeds the supported bound: dimensions are limited to n <= 5");
    if (cfg.dim < 0) throw UsageError("--dim must be positive");
    CheckOptions o;
    o.trials = cfg.trials;
    o.seed = cfg.seed;
    o.max_dim = cfg.dim;
    o.max_order = cfg.order < 0 ? 3 : cfg.order;
    o.mode = resolve_mode(cfg.mode);
    o.tol = cfg.tol;
    if (o.trials < 1) throw UsageError("--trials must be >= 1");
    if (o.max_order > 4) throw UsageError("--order must be <= 4 for check suites");
    const auto results = run_checks(cfg.suite, o);
    out << format_check_report(results, o);
    bool all = std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
    return all ? exit_pass : exit_violation;
}

template <Scalar T> int jet_impl(const SectionField<T>& w, const RunConfig& cfg, std::ostream& out)
{
    const int r = cfg.order < 0 ? 1 : cfg.order;
    if (r > 8) throw UsageError("--order must be <= 8");
    const SamplingGrid grid = SamplingGrid::uniform(w.dim(), cfg.grid);
    const JetField<T> jet = prolong(w, r);
    const T section_norm = cr_norm(w, r, grid);
    const T jet_norm = jet_norm0(jet, grid);
    T iterated_norm = jet_norm;
    if (cfg.iterated) {
        const IteratedJetField<T> it = iterate_prolong(w, r);
        out << "iterated jet of order " << r << ": " << it.array_count() << " arrays\n" << to_listing(it);
        iterated_norm = jet_norm0(it, grid);
    } else {
        out << "jet of order " << r << "\n" << to_listing(jet);
    }
    const bool equal = within(T(iterated_norm - section_norm), cfg.tol) && within(T(jet_norm - section_norm), cfg.tol);
    Report rep;
    rep.add("iterated_jet_norm0", num(iterated_norm));
    rep.add("jet_norm0", num(jet_norm));
    rep.add("section_norm_r", num(section_norm));
    rep.add("isometry", equal ? "equal" : "DIFFER");
    rep.write(out, "norms (grid " + std::to_string(cfg.grid) + " per axis)");
    return equal ? exit_pass : exit_violation;
}

template <Scalar T> int balance_impl(const StressDensity<T>& s, const SectionField<T>& w, const std::string& title,
                                     const RunConfig& cfg, std::ostream& out)
{
    const BalanceReport<T> r = balance_check(s, w);
    Report rep;
    rep.add("lhs", num(r.lhs));
    rep.add("body", num(r.body_term));
    rep.add("boundary", num(r.boundary_term));
    for (const auto& [face, value] : r.faces) rep.add("face[" + face.to_string() + "]", num(value));
    rep.add("residual", num(r.residual));
    const bool ok = within(r.residual, cfg.tol * std::max(1.0, std::fabs(to_double(r.lhs))));
    rep.add("verdict", ok ? "balanced" : "VIOLATED");
    rep.write(out, title);
    return ok ? exit_pass : exit_violation;
}

template <Scalar T> int balance_dispatch(const StressFile& f, const SectionField<Rational>& w, const RunConfig& cfg, std::ostream& out)
{
    if (f.nonholonomic) {
        const auto& nh = *f.nonholonomic;
        require_compatible(nh.dim(), nh.fiber(), w, nh.domain());
        if (nh.order() < 2) throw DomainError("balance: non-holonomic stress needs order >= 2 for reduction");
        const auto s = nh.template cast<T>();
        const auto wt = w.template cast<T>();
        const auto reduced = reduce_nonholonomic(s);
        const auto lifted = reduced_section(wt, nh.order());
        const T fnh = force_of_nh(s, wt);
        const T fred = force_of(reduced, lifted);
        out << "non-holonomic stress of order " << nh.order() << " reduced to a simple stress on a fiber of dimension "
            << reduced.fiber() << "\n";
        out << "force_nh=" << num(fnh) << "  force_reduced=" << num(fred) << "\n";
        int code = balance_impl(reduced, lifted, "balance (reduced)", cfg, out);
        if (!within(T(fnh - fred), cfg.tol * std::max(1.0, std::fabs(to_double(fnh))))) code = exit_violation;
        return code;
    }
    const auto& s = require_simple(f, "balance");
    require_compatible(s.dim(), s.fiber(), w, s.domain());
    return balance_impl(s.template cast<T>(), w.template cast<T>(), "balance", cfg, out);
}

template <Scalar T> int traction_impl(const StressDensity<Rational>& rs, const RunConfig& cfg, std::ostream& out)
{
    const StressDensity<T> s = rs.template cast<T>();
    const TractionDensity<T> t = traction_stress(s);
    std::vector<Face> faces;
    if (cfg.face.empty()) {
        faces = s.domain().faces();
    } else {
        Face f = Face::parse(cfg.face);
        s.domain().require_face(f);
        faces.push_back(f);
    }
    out << "traction density s_{alpha i^} = (-1)^{n-i} S^i_alpha\n";
    for (int alpha = 1; alpha <= s.fiber(); ++alpha) {
        for (int i = 1; i <= s.dim(); ++i) {
            out << "  s[" << alpha << "]" << complement(IncreasingIndex({i}, s.dim())).to_string() << " = " << t.at(alpha, i).to_string() << "\n";
        }
    }
    Report rep;
    for (const Face& f : faces) {
        const auto st = surface_traction(t, f);
        for (std::size_t a = 0; a < st.components.size(); ++a) {
            rep.add("t[" + f.to_string() + "][" + std::to_string(a + 1) + "]", st.components[a].to_string());
        }
    }
    rep.write(out, "surface traction");
    return exit_pass;
}

template <Scalar T> int divergence_impl(const StressDensity<Rational>& rs, std::ostream& out)
{
    const auto d = divergence(rs.template cast<T>());
    Report rep;
    for (std::size_t a = 0; a < d.components.size(); ++a) rep.add("div[" + std::to_string(a + 1) + "]", d.components[a].to_string());
    rep.write(out, "divergence (S^i_{alpha,i} - S_alpha)");
    return exit_pass;
}

template <Scalar T> int restrict_impl(const StressDensity<Rational>& rs, const SectionField<Rational>& rw, const RBox& sub,
                                      std::ostream& out)
{
    const auto s = rs.template cast<T>();
    const auto w = rw.template cast<T>();
    Report rep;
    rep.add("subbody", sub.to_string());
    rep.add("force_subbody", num(restrict_force_system(s, sub.template cast<T>(), w)));
    rep.add("force_body", num(force_of(s, w)));
    rep.write(out, "force system");
    return exit_pass;
}

template <Scalar T> int norm_impl(const SectionField<Rational>& rw, const RunConfig& cfg, std::ostream& out)
{
    const int r = cfg.order < 0 ? 1 : cfg.order;
    const auto w = rw.template cast<T>();
    Report rep;
    rep.add("order", std::to_string(r));
    rep.add("grid", std::to_string(cfg.grid));
    rep.add("norm", num(cr_norm(w, r, SamplingGrid::uniform(w.dim(), cfg.grid))));
    rep.write(out, "C^r norm");
    return exit_pass;
}

template <Scalar T> int margin_impl(const SectionField<Rational>& rw, const RunConfig& cfg, std::ostream& out)
{
    const auto w = rw.template cast<T>();
    const SamplingGrid grid = SamplingGrid::uniform(w.dim(), cfg.grid);
    const T m = injectivity_margin(w, grid);
    Report rep;
    rep.add("grid", std::to_string(cfg.grid));
    rep.add("margin", num(m));
    rep.add("immersion", is_immersion_on_grid(w, grid) ? "yes" : "no");
    rep.write(out, "injectivity margin");
    return exit_pass;
}

template <typename F> int with_mode(Arithmetic mode, F&& f)
{
    if (mode == Arithmetic::rational) return f(Rational{});
    return f(double{});
}

int dispatch(const RunConfig& cfg, std::ostream& out)
{
    if (cfg.grid < 2) throw UsageError("--grid must be >= 2");
    const auto need = [&](std::size_t k) {
        if (cfg.inputs.size() != k) {
            throw UsageError(cfg.command + " expects " + std::to_string(k) + " input file(s), got " + std::to_string(cfg.inputs.size()));
        }
    };
    if (cfg.command == "check") return cmd_check(cfg, out);
    const Arithmetic mode = resolve_mode(cfg.mode);
    if (cfg.command == "jet") {
        need(1);
        const auto w = load_section(cfg.inputs[0]);
        return with_mode(mode, [&](auto tag) { return jet_impl(w.template cast<decltype(tag)>(), cfg, out); });
    }
    if (cfg.command == "balance") {
        need(2);
        const auto f = load_stress(cfg.inputs[0]);
        const auto w = load_section(cfg.inputs[1]);
        return with_mode(mode, [&](auto tag) { return balance_dispatch<decltype(tag)>(f, w, cfg, out); });
    }
    if (cfg.command == "traction") {
        need(1);
        const auto f = load_stress(cfg.inputs[0]);
        const auto& s = require_simple(f, "traction");
        return with_mode(mode, [&](auto tag) { return traction_impl<decltype(tag)>(s, cfg, out); });
    }
    if (cfg.command == "divergence") {
        need(1);
        const auto f = load_stress(cfg.inputs[0]);
        const auto& s = require_simple(f, "divergence");
        return with_mode(mode, [&](auto tag) { return divergence_impl<decltype(tag)>(s, out); });
    }
    if (cfg.command == "restrict") {
        need(2);
        if (cfg.subbody.empty()) throw UsageError("restrict needs --subbody <box>");
        const auto f = load_stress(cfg.inputs[0]);
        if (!f.holonomic) throw DomainError("restrict: needs a holonomic stress file");
        const auto w = load_section(cfg.inputs[1]);
        require_compatible(f.holonomic->dim(), f.holonomic->fiber(), w, f.holonomic->domain());
        const RBox sub = parse_box(cfg.subbody);
        return with_mode(mode, [&](auto tag) { return restrict_impl<decltype(tag)>(*f.holonomic, w, sub, out); });
    }
    if (cfg.command == "norm") {
        need(1);
        const auto w = load_section(cfg.inputs[0]);
        return with_mode(mode, [&](auto tag) { return norm_impl<decltype(tag)>(w, cfg, out); });
    }
    if (cfg.command == "margin") {
        need(1);
        const auto w = load_section(cfg.inputs[0]);
        return with_mode(mode, [&](auto tag) { return margin_impl<decltype(tag)>(w, cfg, out); });
    }
    throw UsageError("unknown command `" + cfg.command + "`");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact verification kernel for global stress theory on box charts", "jetstress"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--mode", cfg.mode, "Arithmetic: rational (default) or float");
        sub->add_option("--tol", cfg.tol, "Tolerance in float mode");
        sub->add_option("--grid", cfg.grid, "Grid points per axis for sup norms");
        sub->add_option("--order", cfg.order, "Jet / stress order");
        sub->add_option("--flip-sign", cfg.flip, "Flip one sign constant (mutation testing)")->group("");
    };

    CLI::App* check = app.add_subcommand("check", "Run identity suites on random exact data");
    check->add_option("suite", cfg.suite, "exterior | currents | jets | stress | all")->required();
    check->add_option("--trials", cfg.trials, "Random trials per identity");
    check->add_option("--seed", cfg.seed, "Seed for the trial generator");
    check->add_option("--dim", cfg.dim, "Largest base dimension (<= 5)");
    common(check);

    CLI::App* jet = app.add_subcommand("jet", "Print the (iterated) jet of a section and its norms");
    jet->add_option("section", cfg.inputs, "Section file")->required();
    jet->add_flag("--iterated", cfg.iterated, "Iterated (non-holonomic) prolongation");
    common(jet);

    CLI::App* balance = app.add_subcommand("balance", "Balance report for a stress and a section");
    balance->add_option("files", cfg.inputs, "Stress file, then section file")->required()->expected(2);
    common(balance);

    CLI::App* traction = app.add_subcommand("traction", "Traction density and surface traction");
    traction->add_option("stress", cfg.inputs, "Stress file")->required();
    traction->add_option("--face", cfg.face, "Face i:lo or i:hi (default: all faces)");
    common(traction);

    CLI::App* divergence_cmd = app.add_subcommand("divergence", "Generalized divergence of a simple stress");
    divergence_cmd->add_option("stress", cfg.inputs, "Stress file")->required();
    common(divergence_cmd);

    CLI::App* restrict_cmd = app.add_subcommand("restrict", "Force on a sub-body");
    restrict_cmd->add_option("files", cfg.inputs, "Stress file, then section file")->required()->expected(2);
    restrict_cmd->add_option("--subbody", cfg.subbody, "Sub-box, e.g. [0,1/2]x[0,1]")->required();
    common(restrict_cmd);

    CLI::App* norm = app.add_subcommand("norm", "C^r norm of a section on a grid");
    norm->add_option("section", cfg.inputs, "Section file")->required();
    common(norm);

    CLI::App* margin = app.add_subcommand("margin", "Injectivity margin of an embedding candidate");
    margin->add_option("section", cfg.inputs, "Section file")->required();
    common(margin);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_pass;
    } catch (const CLI::ParseError& e) {
        err << "jetstress: " << e.what() << "\n";
        return exit_usage;
    }
    for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();

    try {
        std::optional<signs::ScopedFlip> flip;
        if (!cfg.flip.empty()) {
            auto c = signs::parse(cfg.flip);
            if (!c) throw UsageError("unknown sign constant `" + cfg.flip + "`");
            flip.emplace(*c);
        }
        return dispatch(cfg, out);
    } catch (const UsageError& e) {
        err << "jetstress: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "jetstress: " << cfg.command << ": " << e.what() << "\n";
    }
    return exit_usage;
}

}  // namespace jetstress
