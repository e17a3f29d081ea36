#include "jetstress/checks.hpp"

#include "jetstress/currents.hpp"
#include "jetstress/partition.hpp"
#include "jetstress/random.hpp"
#include "jetstress/stress.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

namespace jetstress {
namespace {

// ---- lifting randomly drawn rational data into the arithmetic under test ----

template <Scalar T> T lift(const Rational& x)
{
    if constexpr (std::same_as<T, Rational>) return x;
    else return x.get_d();
}
template <Scalar T> Polynomial<T> lift(const RPoly& p) { return p.template cast<T>(); }
template <Scalar T> BoxDomain<T> lift(const RBox& b) { return b.template cast<T>(); }
template <Scalar T> SectionField<T> lift(const SectionField<Rational>& w) { return w.template cast<T>(); }
template <Scalar T> StressDensity<T> lift(const StressDensity<Rational>& s) { return s.template cast<T>(); }
template <Scalar T> NonHolonomicStressDensity<T> lift(const NonHolonomicStressDensity<Rational>& s)
{
    return s.template cast<T>();
}
template <Scalar T, typename C, typename Tag> auto lift(const Alternating<C, Tag>& a)
{
    using D = decltype(lift<T>(std::declval<const C&>()));
    Alternating<D, Tag> out(a.dim(), a.degree());
    for (const auto& [k, v] : a.components()) out.add(k, lift<T>(v));
    return out;
}
template <Scalar T> SmoothCurrent<T> lift(const SmoothCurrent<Rational>& c)
{
    return SmoothCurrent<T>(lift<T>(c.domain()), c.p(), lift<T>(c.density()), c.side());
}

template <Scalar T> T magnitude(const T& x) { return abs_value(x); }

template <Scalar T> T max_coefficient(const Polynomial<T>& p) { return p.max_abs_coefficient(); }
template <typename C, typename Tag> auto max_coefficient(const Alternating<C, Tag>& a)
{
    if constexpr (requires { a.components().begin()->second.max_abs_coefficient(); }) {
        using T = typename C::scalar_type;
        T best = 0;
        for (const auto& [k, v] : a.components()) best = std::max(best, v.max_abs_coefficient());
        return best;
    } else {
        C best = 0;
        for (const auto& [k, v] : a.components()) best = std::max(best, C(abs_value(v)));
        return best;
    }
}

// ---- residual bookkeeping ----

class Tally {
public:
    Tally(std::string label, std::string statement, double tol) : label_(std::move(label)), statement_(std::move(statement)), tol_(tol) {}

    void record(const Rational& residual, const Rational& = Rational(0))
    {
        ++cases_;
        Rational a = abs(residual);
        if (a > exact_worst_) exact_worst_ = a;
        if (a != 0) pass_ = false;
        exact_ = numeric_ = true;
    }
    /// Float residuals are measured relative to max(1, |scale|).
    void record(double residual, double scale = 0)
    {
        ++cases_;
        double a = std::fabs(residual) / std::max(1.0, std::fabs(scale));
        if (!(a <= tol_)) pass_ = false;
        numeric_ = true;
        if (a > float_worst_ || std::isnan(a)) float_worst_ = a;
    }
    void record_bool(bool ok)
    {
        ++cases_;
        if (!ok) pass_ = false;
    }

    CheckResult result(const std::string& suite) const
    {
        CheckResult r;
        r.suite = suite;
        r.label = label_;
        r.statement = statement_;
        r.cases = cases_;
        r.pass = pass_;
        if (!numeric_) {
            r.max_residual = "-";
        } else if (exact_) {
            r.max_residual = exact_worst_.get_str();
        } else {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3e", float_worst_);
            r.max_residual = buf;
        }
        return r;
    }

private:
    std::string label_;
    std::string statement_;
    double tol_;
    int cases_ = 0;
    bool pass_ = true;
    bool exact_ = false;
    bool numeric_ = false;
    Rational exact_worst_ = 0;
    double float_worst_ = 0;
};

using Results = std::vector<CheckResult>;

int dims_for(const CheckOptions& o, int suite_default) { return o.max_dim > 0 ? o.max_dim : suite_default; }

// Dimension for trial t cycles through 1..max_dim.
int cycle_dim(int trial, int max_dim) { return 1 + trial % max_dim; }

// ---- exterior algebra ----

int inversion_parity(const std::vector<int>& seq)
{
    int inversions = 0;
    for (std::size_t a = 0; a < seq.size(); ++a) {
        for (std::size_t b = a + 1; b < seq.size(); ++b) inversions += seq[a] > seq[b];
    }
    return inversions % 2 ? -1 : 1;
}

template <Scalar T> void exterior_suite(const CheckOptions& o, Results& out)
{
    const int max_dim = dims_for(o, 5);
    TrialRng rng(o.seed);
    Tally complement_tally("wedge_complement", "dX^l ^ dX^l^ = eps^{l l^} dX", o.tol);
    Tally sides("contraction_sides", "theta |_ eta = (-1)^{rp} eta _| theta", o.tol);
    Tally defs("contraction_definitions", "(theta |_ eta)(eta') = theta(eta' ^ eta), (eta _| theta)(eta') = theta(eta ^ eta')", o.tol);
    Tally inverse("e_contr_inverse", "e(C(xi (x) theta)) = xi (x) theta on rank-one generators", o.tol);
    Tally roundtrip("e_right_roundtrip", "e^{-1}(e(omega)) = omega", o.tol);
    Tally contr_wedge("contr_wedge_identity", "d_l^ _| (dX^l^ ^ omega) = omega", o.tol);

    for (int n = 1; n <= max_dim; ++n) {
        const IncreasingIndex full = enumerate_increasing(n, n).front();
        for (int p = 0; p <= n; ++p) {
            for (const auto& lambda : enumerate_increasing(n, p)) {
                const IncreasingIndex hat = complement(lambda);
                std::vector<int> seq = lambda.entries();
                seq.insert(seq.end(), hat.entries().begin(), hat.entries().end());
                AltForm<T> w = wedge(AltForm<T>::basis(lambda, T(1)), AltForm<T>::basis(hat, T(1)));
                complement_tally.record(T(w[full] - T(inversion_parity(seq))));
            }
        }
        for (int trial = 0; trial < o.trials; ++trial) {
            for (int p = 0; p <= n; ++p) {
                for (int r = 0; p + r <= n; ++r) {
                    const AltForm<T> theta = lift<T>(random_constant_form(rng, n, p + r));
                    const MultiVector<T> eta = lift<T>(random_constant_multivector(rng, n, p));
                    const MultiVector<T> eta2 = lift<T>(random_constant_multivector(rng, n, r));
                    const AltForm<T> right = contract_right(theta, eta);
                    const AltForm<T> left = contract_left(eta, theta);
                    sides.record(max_coefficient(right - left.signed_copy(minus_one_pow(r * p))), max_coefficient(right));
                    defs.record(T(pair(right, eta2) - pair(theta, wedge_mv(eta2, eta))), max_coefficient(theta));
                    defs.record(T(pair(left, eta2) - pair(theta, wedge_mv(eta, eta2))), max_coefficient(theta));
                }
                // n-form theta, p-vector xi.
                const AltForm<T> theta = lift<T>(random_constant_form(rng, n, n));
                const MultiVector<T> xi = lift<T>(random_constant_multivector(rng, n, p));
                const FormMap<T> lhs = e_right(contract_right(theta, xi), p);
                const FormMap<T> rhs = rank_one(xi, theta);
                for (const auto& lambda : enumerate_increasing(n, p)) {
                    inverse.record(max_coefficient(lhs.image(lambda) - rhs.image(lambda)), max_coefficient(theta));
                }
                const AltForm<T> omega = lift<T>(random_constant_form(rng, n, n - p));
                roundtrip.record(max_coefficient(e_right_inverse(e_right(omega, p)) - omega), max_coefficient(omega));

                const AltForm<T> psi = lift<T>(random_constant_form(rng, n, p));
                AltForm<T> sum(n, p);
                for (const auto& hat : enumerate_increasing(n, n - p)) {
                    sum += contract_left(MultiVector<T>::basis(hat, T(1)), wedge(AltForm<T>::basis(hat, T(1)), psi));
                }
                contr_wedge.record(max_coefficient(sum - psi), max_coefficient(psi));
            }
        }
    }
    for (const Tally* t : {&complement_tally, &sides, &defs, &inverse, &roundtrip, &contr_wedge}) out.push_back(t->result("exterior"));
}

// ---- currents ----

template <Scalar T> std::vector<FormField<T>> random_tests(TrialRng& rng, const RBox& box, int degree, int count, bool compact, int form_degree)
{
    std::vector<FormField<T>> out;
    for (int k = 0; k < count; ++k) {
        FormField<Rational> psi = random_form(rng, box.dim(), form_degree, degree);
        if (compact) psi = TestForm<Rational>::compactly_supported(psi, box).form;
        out.push_back(lift<T>(psi));
    }
    return out;
}

template <Scalar T> void currents_suite(const CheckOptions& o, Results& out)
{
    const int max_dim = dims_for(o, 3);
    TrialRng rng(o.seed + 1);
    Tally bb("boundary_boundary", "dd T = 0", o.tol);
    Tally bsc("Boundary_of_Smooth_Current", "d(_w T)(psi) = (-1)^{n-p+1} _{dw}T(psi) = T(d psi), psi compactly supported", o.tol);
    Tally face("boundary_face_term", "T(d psi) = dT(psi) + (-1)^{n-p} int_{dX} w ^ psi", o.tol);
    Tally dT("current_exterior_derivative", "d(_w T) = _{dw} T", o.tol);
    Tally rep1("Rep-Curr1c", "R = d_l ^ R^l, R(psi) = R^l(psi_l)", o.tol);
    Tally rep2b("Rep_Curr2b", "R = dX^l^ _| R_l^, R(w) = eps^{l^ l} R_l^(w_l dX)", o.tol);
    Tally rep2c("Rep_Curr2c", "R = R'_l^ |_ dX^l^, R(w) = eps^{l l^} R'_l^(w_l dX)", o.tol);
    Tally primed("primed_unprimed", "T_w = (-1)^{p(n-p)} _w T", o.tol);
    Tally ops("current_operations", "T|_w, w_|T, xi^T, T^xi agree with their defining actions", o.tol);
    Tally scalar("scalar_module", "u T: all four products coincide with psi -> T(u psi)", o.tol);

    for (int trial = 0; trial < o.trials; ++trial) {
        const int n = cycle_dim(trial, max_dim);
        const RBox rbox = random_box(rng, n);
        const BoxDomain<T> box = lift<T>(rbox);
        const int p = rng.integer(0, n);
        const SmoothCurrent<T> current = lift<T>(random_current(rng, rbox, p, 4));

        if (p >= 1) {
            for (const auto& psi : random_tests<T>(rng, rbox, 2, 2, true, p - 1)) {
                T lhs = boundary(current).act(psi);
                T rhs = current.act(exterior_derivative(psi));
                bsc.record(T(lhs - rhs), rhs);
            }
            for (const auto& psi : random_tests<T>(rng, rbox, 2, 2, false, p - 1)) {
                auto split = boundary_full(current, psi);
                face.record(T(split.interior + split.face - split.total), split.total);
            }
            const SmoothCurrent<T> left = current.to_left();
            dT.record(max_coefficient(ext_derivative(current).density() - exterior_derivative(left.density())),
                      max_coefficient(left.density()));
        }
        if (p >= 2) bb.record(max_coefficient(boundary(boundary(current)).density()), max_coefficient(current.density()));

        const auto tests = random_tests<T>(rng, rbox, 2, 2, false, p);
        const auto rep = rep_zero_currents(current);
        const auto rec = reconstruct(rep, box, p);
        const auto rep_n = rep_n_currents(current, false);
        const auto rec_n = reconstruct(rep_n, box, p);
        const auto rep_np = rep_n_currents(current, true);
        const auto rec_np = reconstruct(rep_np, box, p);
        for (const auto& psi : tests) {
            const T ref = current.act(psi);
            rep1.record(T(rec.act(psi) - ref), ref);
            rep1.record(T(act_from_zero_currents(rep, psi) - ref), ref);
            rep2b.record(T(rec_n.act(psi) - ref), ref);
            rep2b.record(T(act_from_n_currents(rep_n, psi) - ref), ref);
            rep2c.record(T(rec_np.act(psi) - ref), ref);
            rep2c.record(T(act_from_n_currents(rep_np, psi) - ref), ref);

            const SmoothCurrent<T> right(box, p, current.density(), DensitySide::right);
            const SmoothCurrent<T> left(box, p, current.density(), DensitySide::left);
            const T r = right.act(psi);
            primed.record(T(r - T(minus_one_pow(p * (n - p))) * left.act(psi)), r);
            primed.record(T(right.to_left().act(psi) - r), r);
        }

        // Contractions with a q-form, q <= p.
        const int q = rng.integer(0, p);
        const FormField<T> omega = lift<T>(random_form(rng, n, q, 2));
        for (const auto& psi : random_tests<T>(rng, rbox, 2, 2, false, p - q)) {
            T a = contract_current_right(current, omega).act(psi);
            ops.record(T(a - current.act(wedge(psi, omega))), a);
            T b = contract_current_left(omega, current).act(psi);
            ops.record(T(b - current.act(wedge(omega, psi))), b);
        }
        // Wedges with a q-vector field, p + q <= n.
        const int qv = rng.integer(0, n - p);
        const MultiVector<Polynomial<T>> xi = lift<T>(random_multivector_field(rng, n, qv, 2));
        for (const auto& psi : random_tests<T>(rng, rbox, 2, 2, false, p + qv)) {
            T a = wedge_current_left(xi, current).act(psi);
            ops.record(T(a - current.act(contract_left(xi, psi))), a);
            T b = wedge_current_right(current, xi).act(psi);
            ops.record(T(b - current.act(contract_right(psi, xi))), b);
        }
        // Scalars act the same through all four products.
        const Polynomial<T> u = lift<T>(random_polynomial(rng, n, 2));
        FormField<T> u_form(n, 0);
        u_form.add(IncreasingIndex({}, n), u);
        MultiVector<Polynomial<T>> u_vec(n, 0);
        u_vec.add(IncreasingIndex({}, n), u);
        for (const auto& psi : tests) {
            const T ref = current.act(psi.scaled(u));
            scalar.record(T(contract_current_right(current, u_form).act(psi) - ref), ref);
            scalar.record(T(contract_current_left(u_form, current).act(psi) - ref), ref);
            scalar.record(T(wedge_current_left(u_vec, current).act(psi) - ref), ref);
            scalar.record(T(wedge_current_right(current, u_vec).act(psi) - ref), ref);
        }
    }
    for (const Tally* t : {&bb, &bsc, &face, &dT, &rep1, &rep2b, &rep2c, &primed, &ops, &scalar}) out.push_back(t->result("currents"));
}

// ---- jets ----

template <Scalar T> void jets_suite(const CheckOptions& o, Results& out)
{
    const int max_dim = dims_for(o, 3);
    TrialRng rng(o.seed + 2);
    Tally iso("Isometries", "||^j^r w||^0 = ||j^r w||^0 = ||w||^r on the grid", o.tol);
    Tally shape("Example-RepNH-2-1", "^J^r has 2^r arrays with |I_p| = popcount(p)", o.tol);
    Tally hol("Rep_It_Jet_Ext-1", "equal-popcount arrays of ^j^r w agree; ^j^r w = iota(j^r w)", o.tol);
    Tally prolong_tally("jet_prolongation", "(j^r w)^a_I = d_I w^a", o.tol);

    for (int trial = 0; trial < o.trials; ++trial) {
        const int n = cycle_dim(trial, max_dim);
        const int m = rng.integer(1, 3);
        const int r = rng.integer(0, o.max_order);
        const RBox rbox = random_box(rng, n);
        const SectionField<T> w = lift<T>(random_section(rng, rbox, m, 4));
        const SamplingGrid grid = SamplingGrid::uniform(n, 3);

        const JetField<T> jet = prolong(w, r);
        const IteratedJetField<T> it = iterate_prolong(w, r);
        const T a = jet_norm0(it, grid), b = jet_norm0(jet, grid), c = cr_norm(w, r, grid);
        iso.record(T(a - c), c);
        iso.record(T(b - c), c);

        shape.record_bool(it.array_count() == (1u << r) && it.labels().size() == (1u << r));
        for (const auto& p : it.labels()) {
            std::size_t width = 1;
            for (int k = 0; k < std::popcount(p.value()); ++k) width *= static_cast<std::size_t>(n);
            shape.record_bool(p.arity() == std::popcount(p.value()) && it.slot_count(p) == width * static_cast<std::size_t>(m));
        }
        hol.record_bool(is_pointwise_holonomic(it, o.tol) && is_holonomic(it, o.tol));
        hol.record_bool(include_holonomic(jet) == it || o.mode == Arithmetic::floating);

        for (int alpha = 1; alpha <= m; ++alpha) {
            for (const auto& index : enumerate_non_decreasing_upto(n, r)) {
                Polynomial<T> d = w[alpha];
                for (int axis : index.entries()) d = d.derivative(axis);
                prolong_tally.record(max_coefficient(Polynomial<T>(jet.at(alpha, index) - d)), max_coefficient(d));
            }
        }
    }
    for (const Tally* t : {&iso, &shape, &hol, &prolong_tally}) out.push_back(t->result("jets"));
}

// ---- stress ----

template <Scalar T> Polynomial<T> contracted(const SectionField<T>& w, const std::vector<Polynomial<T>>& comps)
{
    Polynomial<T> out(w.dim());
    for (int alpha = 1; alpha <= w.fiber(); ++alpha) out += comps[static_cast<std::size_t>(alpha - 1)] * w[alpha];
    return out;
}

template <Scalar T> void stress_suite(const CheckOptions& o, Results& out)
{
    const int max_dim = dims_for(o, 3);
    TrialRng rng(o.seed + 3);
    Tally tr("Tr_St_Dens_vs_St_Dens", "s_{a i^} = (-1)^{n-i} S^i_a, i.e. s_a ^ dX^i = S^i_a dX", o.tol);
    Tally primed("factor_(-1)^n-1", "s' = (-1)^{n-1} s and rho(s') = (-1)^{n-1} rho(s)", o.tol);
    Tally div("def_diver_st-dens", "int div S . phi = -F(phi) for phi vanishing on the boundary", o.tol);
    Tally duality("compute_bdry_i", "int S^i_a d_i(u w^a) = -int S^i_{a,i} u w^a, u vanishing on the boundary", o.tol);
    Tally vw("Principle_of_VW", "S . j^1 w = b . w + t . w", o.tol);
    Tally cauchy("Cauchy_Form_gen", "int_face t . w = (-1)^{n-1} int_face s . w, face by face", o.tol);
    Tally vert("Rep_Vert_St-1", "V(du (x) w) = F(u w) - int u S . j^1 w", o.tol);
    Tally gauge("not_unique", "pure-gauge increments leave F unchanged; a body-force increment does not", o.tol);
    Tally induc("Induc_Force_Sys", "F_R1 + F_R2 = F over a split of the box", o.tol);
    Tally mv("Mayer_Vietoris", "glue(restrict(w)) = w", o.tol);
    Tally nhs("Gen_Equil_NHS", "F_nh(split(S), w) = F(S, w)", o.tol);
    Tally red("reduction_step", "F_nh(S^, w) = F(reduce S^, ^j^{r-1} w), reduced balance residual 0", o.tol);

    for (int trial = 0; trial < o.trials; ++trial) {
        const int n = cycle_dim(trial, max_dim);
        const int m = rng.integer(1, 3);
        const RBox rbox = random_box(rng, n);
        const BoxDomain<T> box = lift<T>(rbox);
        const StressDensity<T> s = lift<T>(random_stress(rng, rbox, m, 1, 3));
        const SectionField<T> w = lift<T>(random_section(rng, rbox, m, 3));
        const T force = force_of(s, w);
        const IncreasingIndex full = enumerate_increasing(n, n).front();

        const TractionDensity<T> t = traction_stress(s);
        const TractionDensity<T> tp = traction_stress(s, true);
        for (int alpha = 1; alpha <= m; ++alpha) {
            const FormField<T>& sa = t.components[static_cast<std::size_t>(alpha - 1)];
            for (int i = 1; i <= n; ++i) {
                Polynomial<T> top = wedge(sa, FormField<T>::basis(IncreasingIndex({i}, n), Polynomial<T>::constant(n, T(1))))[full];
                tr.record(max_coefficient(Polynomial<T>(top - s.flux(alpha, i))), max_coefficient(s.flux(alpha, i)));
            }
            const FormField<T>& spa = tp.components[static_cast<std::size_t>(alpha - 1)];
            primed.record(max_coefficient(spa - sa.signed_copy(minus_one_pow(n - 1))), max_coefficient(sa));
        }
        for (const Face& f : rbox.faces()) {
            const auto a = surface_traction(t, f), b = surface_traction(tp, f);
            for (std::size_t k = 0; k < a.components.size(); ++k) {
                primed.record(max_coefficient(Polynomial<T>(a.components[k] - b.components[k])), max_coefficient(a.components[k]));
            }
            std::vector<FormField<T>> weighted;
            FormField<T> sw(n, n - 1);
            for (int alpha = 1; alpha <= m; ++alpha) sw += t.components[static_cast<std::size_t>(alpha - 1)].scaled(w[alpha]);
            const T stokes = T(minus_one_pow(n - 1)) * integrate_over_face(sw, box, f);
            cauchy.record(T(face_power(a, w) - stokes), stokes);
        }

        // Divergence against compactly supported fields.
        const Polynomial<T> bump = boundary_bump<T>(box.intervals());
        const SectionField<T> phi = bump * w;
        const BodyForceDensity<T> d = divergence(s);
        const T div_pairing = integrate_box(contracted(phi, d.components), box);
        div.record(T(div_pairing + force_of(s, phi)), div_pairing);

        const Polynomial<T> u = bump * lift<T>(random_polynomial(rng, n, 1));
        T lhs = 0, rhs = 0;
        for (int alpha = 1; alpha <= m; ++alpha) {
            Polynomial<T> flux_div(n);
            for (int i = 1; i <= n; ++i) {
                lhs += integrate_box(Polynomial<T>(s.flux(alpha, i) * (u * w[alpha]).derivative(i)), box);
                flux_div += s.flux(alpha, i).derivative(i);
            }
            rhs -= integrate_box(Polynomial<T>(flux_div * u * w[alpha]), box);
        }
        duality.record(T(lhs - rhs), lhs);

        const BalanceReport<T> report = balance_check(s, w);
        vw.record(report.residual, report.lhs);

        const Polynomial<T> v = lift<T>(random_polynomial(rng, n, 2));
        const T vertical = vertical_action(vertical_projection(s), v, w);
        const T expected = force_of(s, v * w) - integrate_box(Polynomial<T>(v * power_density(s, w)), box);
        vert.record(T(vertical - expected), vertical);

        // Static indeterminacy.
        if (n >= 2) {
            std::vector<GaugePotential<T>> potentials;
            for (int alpha = 1; alpha <= m; ++alpha) {
                for (int i = 1; i <= n; ++i) {
                    for (int j = i + 1; j <= n; ++j) potentials.push_back({alpha, i, j, lift<T>(random_polynomial(rng, n, 1))});
                }
            }
            const StressDensity<T> inc = pure_gauge_increment(box, m, potentials);
            const auto probes = monomial_probes(box, m, 2);
            const auto eq = stresses_equivalent(s, s + inc, probes, o.tol * std::max(1.0, to_double(abs_value(force))));
            gauge.record_bool(eq.equivalent);
            for (const auto& c : divergence(inc).components) gauge.record(max_coefficient(c));
            for (const auto& st : surface_tractions(traction_stress(inc))) {
                for (const auto& c : st.components) gauge.record(max_coefficient(c));
            }
        }
        StressDensity<T> body = s;
        body.set_base(1, s.base(1) + Polynomial<T>::constant(n, T(1)));
        gauge.record_bool(!stresses_equivalent(s, body, monomial_probes(box, m, 1), o.tol).equivalent);

        // Force systems on a split of the box.
        const int axis = rng.integer(1, n);
        const T mid = (box.lower(axis) + box.upper(axis)) / T(2);
        auto lo_iv = box.intervals(), hi_iv = box.intervals();
        lo_iv[static_cast<std::size_t>(axis - 1)].second = mid;
        hi_iv[static_cast<std::size_t>(axis - 1)].first = mid;
        const T split_sum = restrict_force_system(s, BoxDomain<T>(lo_iv), w) + restrict_force_system(s, BoxDomain<T>(hi_iv), w);
        induc.record(T(split_sum - force), force);

        // Gluing with a two-patch cover along every axis.
        {
            std::vector<std::vector<std::pair<T, T>>> covers;
            for (int i = 1; i <= n; ++i) {
                const T a = box.lower(i), b = box.upper(i), len = b - a;
                covers.push_back({{a, T(a + len * T(3) / T(5))}, {T(a + len * T(2) / T(5)), b}});
            }
            const PartitionOfUnity<T> pou(box, covers, 1);
            const auto glued = glue_sections(restrict_to_patches(w, pou), pou, o.tol);
            if constexpr (std::same_as<T, Rational>) {
                mv.record_bool(glued.as_section() == w);
            } else {
                const auto points = SamplingGrid::uniform(n, 4).points(box);
                double worst = 0;
                for (const auto& x : points) {
                    const auto g = glued.evaluate(x);
                    for (int alpha = 1; alpha <= m; ++alpha) {
                        worst = std::max(worst, std::fabs(g[static_cast<std::size_t>(alpha - 1)] - w[alpha].evaluate(x)));
                    }
                }
                mv.record(worst);
            }
        }

        // Non-holonomic stresses.
        const int r = rng.integer(1, std::max(1, o.max_order));
        const int small_m = n == 3 && r == 3 ? 1 : m;
        const SectionField<T> wr = lift<T>(random_section(rng, rbox, small_m, 3));
        const StressDensity<T> sr = lift<T>(random_stress(rng, rbox, small_m, r, 2));
        const T fr = force_of(sr, wr);
        nhs.record(T(force_of_nh(split_symmetric(sr), wr) - fr), fr);

        if (o.max_order >= 2) {
            const int rr = rng.integer(2, std::max(2, o.max_order));
            const NonHolonomicStressDensity<T> nh = lift<T>(random_nh_stress(rng, rbox, small_m, rr, 2));
            const StressDensity<T> reduced = reduce_nonholonomic(nh);
            const SectionField<T> lifted = reduced_section(wr, rr);
            const T fnh = force_of_nh(nh, wr);
            red.record(T(fnh - force_of(reduced, lifted)), fnh);
            red.record(balance_check(reduced, lifted).residual, fnh);
        }
    }
    for (const Tally* t : {&tr, &primed, &div, &duality, &vw, &cauchy, &vert, &gauge, &induc, &mv, &nhs, &red}) {
        out.push_back(t->result("stress"));
    }
}

template <Scalar T> void run_suite(const std::string& suite, const CheckOptions& o, Results& out)
{
    if (suite == "exterior") exterior_suite<T>(o, out);
    else if (suite == "currents") currents_suite<T>(o, out);
    else if (suite == "jets") jets_suite<T>(o, out);
    else if (suite == "stress") stress_suite<T>(o, out);
}

}  // namespace

const std::vector<std::string>& check_suite_names()
{
    static const std::vector<std::string> names{"exterior", "currents", "jets", "stress", "all"};
    return names;
}

bool is_check_suite(const std::string& name)
{
    const auto& names = check_suite_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<CheckResult> run_checks(const std::string& suite, const CheckOptions& options)
{
    if (!is_check_suite(suite)) throw DomainError("unknown check suite `" + suite + "`");
    if (options.max_dim > 5) throw DomainError("dimension " + std::to_string(options.max_dim) + " exceeds the supported bound n <= 5");
    if (options.max_dim < 0) throw DomainError("dimension must be positive");
    if (options.trials < 1) throw DomainError("trials must be >= 1");
    if (options.max_order < 0 || options.max_order > 4) throw DomainError("order must be in 0..4");
    std::vector<std::string> suites = suite == "all" ? std::vector<std::string>{"exterior", "currents", "jets", "stress"}
                                                     : std::vector<std::string>{suite};
    Results out;
    for (const auto& s : suites) {
        if (options.mode == Arithmetic::rational) run_suite<Rational>(s, options, out);
        else run_suite<double>(s, options, out);
    }
    return out;
}

std::string format_check_report(const std::vector<CheckResult>& results, const CheckOptions& options)
{
    std::size_t label_width = 0;
    for (const auto& r : results) label_width = std::max(label_width, r.label.size());
    std::string out = "jetstress check  mode=" + std::string(options.mode == Arithmetic::rational ? "rational" : "float") +
                      "  seed=" + std::to_string(options.seed) + "  trials=" + std::to_string(options.trials) + "\n";
    int failures = 0;
    for (const auto& r : results) {
        std::string label = r.label;
        label.resize(label_width, ' ');
        char cases[16];
        std::snprintf(cases, sizeof cases, "%6d", r.cases);
        out += std::string(r.pass ? "PASS" : "FAIL") + "  " + r.suite + std::string(10 - std::min<std::size_t>(9, r.suite.size()), ' ') +
               label + "  cases=" + cases + "  max_residual=" + r.max_residual + "  " + r.statement + "\n";
        failures += !r.pass;
    }
    out += "summary: " + std::to_string(results.size() - static_cast<std::size_t>(failures)) + "/" +
           std::to_string(results.size()) + " identities hold\n";
    return out;
}

}  // namespace jetstress
