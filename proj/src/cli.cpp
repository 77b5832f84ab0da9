#include "qprim/cli.hpp"

#include "qprim/charsums.hpp"
#include "qprim/criteria.hpp"
#include "qprim/densities.hpp"
#include "qprim/error.hpp"
#include "qprim/parallel.hpp"
#include "qprim/presets.hpp"
#include "qprim/search.hpp"
#include "qprim/streaks.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <functional>
#include <optional>
#include <sstream>

namespace qprim::cli {

using nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ordered_json num(i128 v)
{
    if (fits_i64(v))
        return static_cast<i64>(v);
    return to_string(v);
}

ordered_json unum(u128 v)
{
    if (v <= static_cast<u128>(~u64{0}))
        return static_cast<u64>(v);
    return to_string(v);
}

template <class T>
ordered_json opt(const std::optional<T>& v)
{
    if (!v)
        return nullptr;
    if constexpr (std::is_same_v<T, u128>)
        return unum(*v);
    else if constexpr (std::is_same_v<T, i128>)
        return num(*v);
    else
        return *v;
}

i128 parse_int(const std::string& text, const char* flag)
{
    try {
        return parse_i128(text);
    } catch (const Error&) {
        throw UsageError(std::string("--") + flag + ": not an integer: " + text);
    }
}

ordered_json rational_json(const Rational& v)
{
    return {{"value", v.str()}, {"numerator", num(v.num())}, {"denominator", num(v.den())}, {"approx", v.to_double()}};
}

ordered_json streak_json(const streaks::StreakResult& r)
{
    return {{"poly", poly::format(r.poly)},
            {"g", num(r.g)},
            {"count", r.count},
            {"n_at_failure", opt(r.n_at_failure)},
            {"failing_prime", opt(r.failing_prime)},
            {"residual_index_at_failure", opt(r.residual_index_at_failure)},
            {"n_scanned", r.n_scanned},
            {"primes_seen", r.primes_seen},
            {"complete", r.complete()}};
}

ordered_json density_json(const densities::DensityReport& d)
{
    return {{"value", d.value},
            {"cutoff", d.cutoff},
            {"tail_bound", d.tail_bound},
            {"method", std::string(densities::to_string(d.method))}};
}

// Flattens nested objects into dotted keys; arrays stay as JSON text.
void flatten(const ordered_json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out)
{
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
        return;
    }
    if (j.is_string())
        out.emplace_back(prefix, j.get<std::string>());
    else if (j.is_number_float()) {
        std::ostringstream s;
        s.precision(12);
        s << j.get<double>();
        out.emplace_back(prefix, s.str());
    } else
        out.emplace_back(prefix, j.dump());
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + '"';
}

struct PolyArgs {
    std::string poly;
    std::string quad;
    std::string preset;

    void add(CLI::App* app)
    {
        app->add_option("--poly", poly, "coefficients c0,c1,...,ck (constant first)");
        app->add_option("--quad", quad, "quadratic a,b,c for aX^2+bX+c");
        app->add_option("--preset", preset, "named instance");
    }

    poly::PolyZ get() const
    {
        const int given = !poly.empty() + !quad.empty() + !preset.empty();
        if (given != 1)
            throw UsageError("exactly one of --poly, --quad, --preset is required");
        if (!preset.empty())
            return presets::find_preset(preset).poly;
        try {
            return !poly.empty() ? poly::parse_coefficients(poly) : poly::parse_quadratic(quad).to_poly();
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::invalid_input)
                throw UsageError(e.what());
            throw;
        }
    }

    poly::QuadraticPoly quadratic() const { return poly::QuadraticPoly::from_poly(get()); }

    ordered_json echo() const
    {
        ordered_json j = ordered_json::object();
        if (!poly.empty())
            j["poly"] = poly;
        if (!quad.empty())
            j["quad"] = quad;
        if (!preset.empty())
            j["preset"] = preset;
        return j;
    }
};

struct Context {
    std::string format = "text";
    unsigned workers = 0;
    bool long_run = false;
    std::optional<u64> seed;
};

void require_long_run(const Context& ctx, bool heavy, const std::string& what)
{
    if (heavy && !ctx.long_run)
        throw UsageError(what + " is long-running; pass --long-run to allow it");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Primitive-root streaks along quadratic polynomials", "qprim"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);

    Context ctx;
    app.add_option("--format", ctx.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--workers", ctx.workers, "worker threads (default: QPRIM_THREADS or all cores)");
    app.add_flag("--long-run", ctx.long_run, "allow hour-scale reproductions");

    ordered_json inputs = ordered_json::object();
    ordered_json outputs = ordered_json::object();
    std::function<void()> action;
    PolyArgs pa;

    const auto workers = [&] { return ctx.workers ? ctx.workers : default_workers(); };

    // streak
    auto* c_streak = app.add_subcommand("streak", "c_g(f): primitive-root streak along prime values");
    std::string s_g;
    i64 s_ncap = 100'000'000;
    std::uint64_t s_prefix = 0;
    pa.add(c_streak);
    c_streak->add_option("--g", s_g, "base g")->required();
    c_streak->add_option("--n-cap", s_ncap, "largest n scanned")->capture_default_str();
    c_streak->add_option("--prefix", s_prefix, "stop after this many successes");
    c_streak->callback([&] {
        action = [&] {
            const auto f = pa.get();
            const i128 g = parse_int(s_g, "g");
            inputs = pa.echo();
            inputs["g"] = num(g);
            inputs["n_cap"] = s_ncap;
            inputs["prefix"] = s_prefix;
            outputs = streak_json(streaks::streak(f, g, s_ncap, s_prefix));
        };
    });

    // pi
    auto* c_pi = app.add_subcommand("pi", "pi_f(x) = #{0 <= n <= x : f(n) prime}");
    i64 pi_x = 0;
    std::optional<i64> pi_from;
    pa.add(c_pi);
    c_pi->add_option("--x", pi_x, "upper end of the n range")->required();
    c_pi->add_option("--from", pi_from, "lower end of the n range (default 0)");
    c_pi->callback([&] {
        action = [&] {
            const auto f = pa.get();
            inputs = pa.echo();
            inputs["x"] = pi_x;
            require_long_run(ctx, pi_x > 10'000'000, "pi beyond x = 10^7");
            if (pi_from) {
                inputs["from"] = *pi_from;
                outputs["count"] = streaks::count_prime_values(f, *pi_from, pi_x, workers());
            } else {
                outputs["pi"] = streaks::pi_f(f, pi_x, workers());
            }
        };
    });

    // prstats
    auto* c_pr = app.add_subcommand("prstats", "residual-index histogram over prime values");
    std::string pr_g;
    i64 pr_ncap = 100'000;
    pa.add(c_pr);
    c_pr->add_option("--g", pr_g, "base g")->required();
    c_pr->add_option("--n-cap", pr_ncap, "largest n scanned")->capture_default_str();
    c_pr->callback([&] {
        action = [&] {
            const auto f = pa.get();
            const i128 g = parse_int(pr_g, "g");
            inputs = pa.echo();
            inputs["g"] = num(g);
            inputs["n_cap"] = pr_ncap;
            require_long_run(ctx, pr_ncap > 1'000'000, "prstats beyond n = 10^6");
            const auto s = streaks::pr_fraction(f, g, pr_ncap, workers());
            ordered_json hist = ordered_json::object();
            for (const auto& [r, c] : s.histogram)
                hist[to_string(r)] = c;
            outputs = {{"primes_total", s.primes_total},
                       {"primes_with_g_pr", s.primes_with_g_pr},
                       {"fraction", s.primes_total ? static_cast<double>(s.primes_with_g_pr) / s.primes_total : 0.0},
                       {"histogram", hist},
                       {"n_cap", s.n_cap}};
        };
    });

    // maxstreak
    auto* c_max = app.add_subcommand("maxstreak", "max over k <= k_max of c_{k^2 g}(f)");
    std::string m_g;
    i64 m_kmax = 1;
    i64 m_ncap = 100'000'000;
    pa.add(c_max);
    c_max->add_option("--g-base", m_g, "base g")->required();
    c_max->add_option("--k-max", m_kmax, "largest k")->required();
    c_max->add_option("--n-cap", m_ncap, "largest n scanned")->capture_default_str();
    c_max->callback([&] {
        action = [&] {
            const auto f = pa.get();
            const i128 g = parse_int(m_g, "g-base");
            inputs = pa.echo();
            inputs["g_base"] = num(g);
            inputs["k_max"] = m_kmax;
            inputs["n_cap"] = m_ncap;
            require_long_run(ctx, m_kmax > 1000, "maxstreak beyond k = 1000");
            const auto m = streaks::empirical_max_streak(g, f, m_kmax, m_ncap, workers());
            outputs = {{"k_best", m.k_best}, {"c_best", m.c_best}, {"lower_bound", m.lower_bound}};
        };
    });

    // density
    auto* c_den = app.add_subcommand("density", "Euler-product densities");
    std::string d_kind = "delta";
    std::uint64_t d_cutoff = 0;
    bool d_accel = false;
    std::string d_A, d_B, d_D = "-163", d_twist = "-978";
    pa.add(c_den);
    c_den->add_option("--kind", d_kind, "delta | delta1 | p1 | naive | B | H")
        ->check(CLI::IsMember({"delta", "delta1", "p1", "naive", "B", "H"}))
        ->capture_default_str();
    c_den->add_option("--cutoff", d_cutoff, "prime cutoff (default per kind)");
    c_den->add_flag("--accelerate", d_accel, "tail-corrected delta");
    c_den->add_option("--A", d_A, "delta1: A in AX^2+B");
    c_den->add_option("--B", d_B, "delta1: B in AX^2+B");
    c_den->add_option("--D", d_D, "p1/naive: discriminant")->capture_default_str();
    c_den->add_option("--twist", d_twist, "p1: twisting discriminant")->capture_default_str();
    c_den->callback([&] {
        action = [&] {
            inputs["kind"] = d_kind;
            const auto cut = [&](u64 dflt) { return d_cutoff ? d_cutoff : dflt; };
            densities::DensityReport rep;
            if (d_kind == "delta") {
                const auto f = pa.get();
                inputs.update(pa.echo());
                inputs["accelerate"] = d_accel;
                rep = densities::delta(f, cut(densities::kDefaultDeltaCutoff), d_accel);
            } else if (d_kind == "delta1") {
                if (d_A.empty() || d_B.empty())
                    throw UsageError("delta1 needs --A and --B");
                inputs["A"] = d_A;
                inputs["B"] = d_B;
                rep = densities::delta1(parse_int(d_A, "A"), parse_int(d_B, "B"), cut(densities::kDefaultDeltaCutoff));
            } else if (d_kind == "p1") {
                inputs["D"] = d_D;
                inputs["twist"] = d_twist;
                rep = densities::p1_corrected(parse_int(d_D, "D"), parse_int(d_twist, "twist"),
                                              cut(densities::kDefaultDeltaCutoff));
            } else if (d_kind == "naive") {
                inputs["D"] = d_D;
                rep = densities::lehmer_naive(parse_int(d_D, "D"), cut(densities::kDefaultDeltaCutoff));
            } else if (d_kind == "B") {
                rep = densities::artin_B(cut(densities::kDefaultArtinCutoff));
            } else {
                const auto f = pa.get();
                inputs.update(pa.echo());
                const auto h = densities::bateman_horn_H(f, cut(densities::kDefaultDeltaCutoff));
                rep = h.density;
                outputs["irreducibility_assumed"] = h.irreducibility_assumed;
            }
            inputs["cutoff"] = rep.cutoff;
            outputs.update(density_json(rep));
        };
    });

    // hlconst
    auto* c_hl = app.add_subcommand("hlconst", "Hardy-Littlewood constant C(Delta)");
    std::string h_delta;
    double h_tol = densities::kDefaultLTolerance;
    std::uint64_t h_cutoff = 0;
    bool h_direct = false;
    c_hl->add_option("--Delta", h_delta, "discriminant, negative and 5 mod 8")->required();
    c_hl->add_option("--tol", h_tol, "absolute tolerance")->capture_default_str();
    c_hl->add_option("--cutoff", h_cutoff, "prime cutoff");
    c_hl->add_flag("--direct", h_direct, "defining product instead of the L-value form");
    c_hl->callback([&] {
        action = [&] {
            const i128 Delta = parse_int(h_delta, "Delta");
            inputs = {{"Delta", num(Delta)}, {"tol", h_tol}, {"cutoff", h_cutoff}, {"direct", h_direct}};
            if (h_direct)
                outputs = density_json(densities::hl_constant_direct(Delta, h_cutoff ? h_cutoff : 1'000'000));
            else
                outputs = density_json(densities::hl_constant(Delta, h_tol, h_cutoff));
        };
    });

    // lvalue
    auto* c_l = app.add_subcommand("lvalue", "L(s, chi_D) for s = 1, 2");
    int l_s = 1;
    std::string l_D;
    double l_tol = densities::kDefaultLTolerance;
    c_l->add_option("--s", l_s, "1 or 2")->capture_default_str();
    c_l->add_option("--D", l_D, "fundamental discriminant")->required();
    c_l->add_option("--tol", l_tol, "absolute tolerance")->capture_default_str();
    c_l->callback([&] {
        action = [&] {
            const auto D = charsums::make_discriminant(parse_int(l_D, "D"));
            inputs = {{"s", l_s}, {"D", num(D.D)}, {"tol", l_tol}};
            const auto v = densities::L_chi(l_s, D, l_tol);
            outputs = {{"value", static_cast<double>(v.value)}, {"abs_error", v.abs_error}};
        };
    });

    // mstat
    auto* c_m = app.add_subcommand("mstat", "M(p1, s): expected maximum of s geometric streaks");
    double ms_p = 0;
    std::uint64_t ms_s = 1;
    std::string ms_method = "series";
    std::uint64_t ms_trials = 1000;
    std::uint64_t ms_seed = 1;
    c_m->add_option("--p1", ms_p, "success probability")->required();
    c_m->add_option("--s", ms_s, "number of streaks")->required();
    c_m->add_option("--method", ms_method, "series | harmonic | asymptotic | montecarlo")
        ->check(CLI::IsMember({"series", "harmonic", "asymptotic", "montecarlo"}))
        ->capture_default_str();
    c_m->add_option("--trials", ms_trials, "Monte-Carlo trials")->capture_default_str();
    c_m->add_option("--seed", ms_seed, "Monte-Carlo seed")->capture_default_str();
    c_m->callback([&] {
        action = [&] {
            inputs = {{"p1", ms_p}, {"s", ms_s}, {"method", ms_method}};
            if (ms_method == "series")
                outputs["value"] = densities::expected_max(ms_p, ms_s);
            else if (ms_method == "harmonic")
                outputs["value"] = densities::expected_max_harmonic(ms_p, ms_s);
            else if (ms_method == "asymptotic")
                outputs["value"] = densities::expected_max_asymptotic(ms_p, ms_s);
            else {
                inputs["trials"] = ms_trials;
                ctx.seed = ms_seed;
                const auto mc = densities::monte_carlo_max(ms_p, ms_s, ms_trials, ms_seed);
                outputs = {{"value", mc.mean}, {"stderr", mc.stderr_}};
            }
        };
    });

    // charsum
    auto* c_cs = app.add_subcommand("charsum", "character sums and local densities");
    std::string cs_kind = "tsum";
    u64 cs_p = 0;
    std::string cs_a = "0";
    std::string cs_d;
    bool cs_brute = false;
    pa.add(c_cs);
    c_cs->add_option("--kind", cs_kind, "jacobsthal | tsum | ap | ad")
        ->check(CLI::IsMember({"jacobsthal", "tsum", "ap", "ad"}))
        ->capture_default_str();
    c_cs->add_option("--p", cs_p, "odd prime");
    c_cs->add_option("--a", cs_a, "jacobsthal: shift a")->capture_default_str();
    c_cs->add_option("--d", cs_d, "ad: odd squarefree modulus");
    c_cs->add_flag("--brute", cs_brute, "evaluate by enumeration");
    c_cs->callback([&] {
        action = [&] {
            inputs["kind"] = cs_kind;
            if (cs_kind == "ad") {
                if (cs_d.empty())
                    throw UsageError("--d is required for kind ad");
                const i128 d = parse_int(cs_d, "d");
                inputs.update(pa.echo());
                inputs["d"] = num(d);
                const Rational v = cs_brute ? charsums::a_d_enumerated(pa.get(), static_cast<u64>(d))
                                            : charsums::a_d_global(pa.quadratic(), d);
                outputs = rational_json(v);
                return;
            }
            if (cs_p == 0)
                throw UsageError("--p is required");
            inputs["p"] = cs_p;
            if (cs_kind == "jacobsthal") {
                const i128 a = parse_int(cs_a, "a");
                inputs["a"] = num(a);
                outputs["value"] = num(charsums::jacobsthal_sum(a, cs_p));
            } else if (cs_kind == "tsum") {
                inputs.update(pa.echo());
                outputs["value"] = num(cs_brute ? charsums::t_sum_brute(pa.get(), cs_p)
                                                : charsums::t_sum(pa.quadratic(), cs_p));
            } else {
                inputs.update(pa.echo());
                const Rational v =
                    cs_brute ? charsums::a_p_brute(pa.get(), cs_p) : charsums::a_p_local(pa.quadratic(), cs_p);
                outputs = rational_json(v);
            }
        };
    });

    // tau
    auto* c_tau = app.add_subcommand("tau", "tau_D^-(f) and admissible discriminants");
    std::string t_D;
    bool t_adm = false;
    std::string t_bound = "0";
    pa.add(c_tau);
    c_tau->add_option("--D", t_D, "fundamental discriminant");
    c_tau->add_flag("--admissible", t_adm, "list all D with tau = 1");
    c_tau->add_option("--bound", t_bound, "|D| bound for --admissible (0: all)")->capture_default_str();
    c_tau->callback([&] {
        action = [&] {
            inputs = pa.echo();
            if (t_adm) {
                const i128 bound = parse_int(t_bound, "bound");
                inputs["bound"] = num(bound);
                ordered_json list = ordered_json::array();
                for (const auto& D : charsums::admissible_discriminants(pa.quadratic(), bound))
                    list.push_back(num(D.D));
                outputs["admissible"] = list;
                return;
            }
            if (t_D.empty())
                throw UsageError("--D or --admissible is required");
            const auto D = charsums::make_discriminant(parse_int(t_D, "D"));
            inputs["D"] = num(D.D);
            const Rational t = charsums::tau_minus(pa.get(), D);
            outputs = rational_json(t);
        };
    });

    // search
    auto* c_search = app.add_subcommand("search", "record search over k^2 g");
    std::string q_d, q_d1, q_shift = "0", q_r1 = "1", q_r2 = "1", q_g;
    int q_alpha = 0, q_sign = 1;
    i64 q_klo = 1, q_khi = 1, q_ncap = 100'000'000, q_every = 16;
    std::string q_checkpoint;
    std::string q_bases;
    bool q_quality = false;
    c_search->add_option("--d", q_d, "squarefree d")->required();
    c_search->add_option("--d1", q_d1, "divisor d1 of d")->required();
    c_search->add_option("--alpha", q_alpha, "power of two")->capture_default_str();
    c_search->add_option("--sign", q_sign, "+1 or -1")->capture_default_str();
    c_search->add_option("--shift", q_shift, "X -> X + shift")->capture_default_str();
    c_search->add_option("--r1", q_r1, "multiplier r1")->capture_default_str();
    c_search->add_option("--r2", q_r2, "multiplier r2")->capture_default_str();
    c_search->add_option("--g-base", q_g, "base g")->required();
    c_search->add_option("--k-lo", q_klo, "first k")->capture_default_str();
    c_search->add_option("--k-hi", q_khi, "last k")->capture_default_str();
    c_search->add_option("--n-cap", q_ncap, "largest n per streak")->capture_default_str();
    c_search->add_option("--checkpoint", q_checkpoint, "append-only progress file");
    c_search->add_option("--checkpoint-every", q_every, "k values between checkpoint lines")
        ->capture_default_str();
    c_search->add_option("--bases", q_bases, "also list admissible bases with |g| <= this bound");
    c_search->add_flag("--quality", q_quality, "also report delta(f)");
    c_search->callback([&] {
        action = [&] {
            search::SearchConfig cfg;
            cfg.d = parse_int(q_d, "d");
            cfg.d1 = parse_int(q_d1, "d1");
            cfg.alpha = q_alpha;
            cfg.sign = q_sign;
            cfg.shift = parse_int(q_shift, "shift");
            cfg.r1 = parse_int(q_r1, "r1");
            cfg.r2 = parse_int(q_r2, "r2");
            cfg.g_base = parse_int(q_g, "g-base");
            cfg.k_lo = q_klo;
            cfg.k_hi = q_khi;
            cfg.n_cap = q_ncap;
            inputs = {{"d", num(cfg.d)},        {"d1", num(cfg.d1)},      {"alpha", cfg.alpha},
                      {"sign", cfg.sign},       {"shift", num(cfg.shift)}, {"r1", num(cfg.r1)},
                      {"r2", num(cfg.r2)},      {"g_base", num(cfg.g_base)}, {"k_lo", cfg.k_lo},
                      {"k_hi", cfg.k_hi},       {"n_cap", cfg.n_cap},     {"checkpoint", q_checkpoint}};
            const auto f = search::candidate_poly(cfg);
            outputs["poly"] = poly::format(f);
            outputs["config_hash"] = search::config_hash(cfg);
            outputs["warnings"] = search::candidate_warnings(cfg);
            const auto q = poly::QuadraticPoly::from_poly(f);
            if (q_quality)
                outputs["quality"] = search::quality(q);
            if (!q_bases.empty()) {
                ordered_json list = ordered_json::array();
                for (i128 g : search::admissible_bases(q, parse_int(q_bases, "bases")))
                    list.push_back(num(g));
                outputs["admissible_bases"] = list;
            }
            search::SweepOptions sopt;
            sopt.workers = workers();
            sopt.checkpoint_every = q_every;
            const auto best = search::sweep(cfg, q_checkpoint, sopt);
            outputs["best"] = {{"k", best.k},
                               {"g", num(best.g)},
                               {"c", best.c},
                               {"failing_prime", opt(best.failing_prime)},
                               {"lower_bound", best.lower_bound},
                               {"timestamp", best.timestamp}};
        };
    });

    // criteria
    auto* c_cr = app.add_subcommand("criteria", "exhaustive checks of primitive-root criteria");
    std::string cr_mode = "classic";
    u64 cr_hi = 10'000;
    std::string cr_g = "3";
    i64 cr_ncap = 2000, cr_kmax = 1;
    c_cr->add_option("--mode", cr_mode, "classic | extended | fueter | prop2 | lemma1")
        ->check(CLI::IsMember({"classic", "extended", "fueter", "prop2", "lemma1"}))
        ->capture_default_str();
    c_cr->add_option("--hi", cr_hi, "upper end of the p1 / p range")->capture_default_str();
    c_cr->add_option("--g", cr_g, "extended: base g")->capture_default_str();
    c_cr->add_option("--n-cap", cr_ncap, "prop2/lemma1: largest n")->capture_default_str();
    c_cr->add_option("--k-max", cr_kmax, "prop2: largest k")->capture_default_str();
    c_cr->callback([&] {
        action = [&] {
            inputs["mode"] = cr_mode;
            criteria::ScanReport rep;
            if (cr_mode == "classic") {
                inputs["hi"] = cr_hi;
                rep = criteria::scan_classic(cr_hi, workers());
            } else if (cr_mode == "extended") {
                const i128 g = parse_int(cr_g, "g");
                inputs["hi"] = cr_hi;
                inputs["g"] = num(g);
                rep = criteria::scan_extended(g, cr_hi, workers());
            } else if (cr_mode == "fueter") {
                inputs["hi"] = cr_hi;
                rep = criteria::scan_fueter(cr_hi, workers());
            } else if (cr_mode == "prop2") {
                inputs["k_max"] = cr_kmax;
                inputs["n_cap"] = cr_ncap;
                rep = criteria::scan_prop2(cr_kmax, cr_ncap, workers());
            } else {
                inputs["n_cap"] = cr_ncap;
                rep = criteria::scan_lemma1(cr_ncap);
            }
            outputs = {{"passed", rep.passed()},
                       {"checked", rep.checked},
                       {"applicable", rep.applicable},
                       {"counterexamples", rep.counterexamples}};
        };
    });

    // verify
    auto* c_ver = app.add_subcommand("verify", "reproduce a preset instance");
    std::string v_preset;
    std::optional<std::uint64_t> v_prefix;
    c_ver->add_option("--preset", v_preset, "preset name")->required();
    c_ver->add_option("--prefix", v_prefix, "check only this many primes");
    c_ver->callback([&] {
        action = [&] {
            const auto& p = presets::find_preset(v_preset);
            inputs = {{"preset", p.name}};
            outputs["poly"] = poly::format(p.poly);
            outputs["source_form"] = p.source_form;
            if (!p.g)
                throw UsageError("preset " + p.name + " has no base g; use `pi --preset`");
            outputs["g"] = num(*p.g);
            std::uint64_t limit = v_prefix ? *v_prefix : (ctx.long_run ? 0 : p.default_prefix);
            inputs["prefix"] = limit;
            require_long_run(ctx, limit == 0 && p.default_prefix > 0, "the full " + p.name + " record");
            const auto r = streaks::streak(p.poly, *p.g, 100'000'000, limit);
            outputs["streak"] = streak_json(r);
            bool pass;
            if (limit != 0) {
                pass = r.count >= limit;
                outputs["check"] = "first " + std::to_string(limit) + " primes have g as a primitive root";
            } else {
                pass = r.complete() && (!p.expected_c || r.count == *p.expected_c) &&
                       (!p.failing_prime || r.failing_prime == p.failing_prime) &&
                       (!p.n_at_failure || r.n_at_failure == p.n_at_failure) &&
                       (!p.residual_index || r.residual_index_at_failure == p.residual_index);
                outputs["check"] = "full streak matches the recorded value";
            }
            outputs["expected_c"] = opt(p.expected_c);
            outputs["passed"] = pass;
            if (!pass)
                throw Error(ErrorKind::contradiction, "preset " + p.name + " did not reproduce");
        };
    });

    std::vector<const char*> argv{"qprim"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return usage_error;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const auto t0 = std::chrono::steady_clock::now();
    std::string failure;
    try {
        action();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const Error& e) {
        failure = e.what();
    }
    const double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    ordered_json report{{"command", command},
                        {"inputs", inputs},
                        {"outputs", outputs},
                        {"elapsed_ms", elapsed},
                        {"version", kVersion},
                        {"seed", ctx.seed ? ordered_json(*ctx.seed) : ordered_json(nullptr)}};
    if (!failure.empty())
        report["error"] = failure;

    if (ctx.format == "json") {
        out << report.dump(2) << '\n';
    } else {
        std::vector<std::pair<std::string, std::string>> rows;
        flatten(outputs, "", rows);
        if (ctx.format == "csv") {
            std::string header, values;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                header += (i ? "," : "") + csv_field(rows[i].first);
                values += (i ? "," : "") + csv_field(rows[i].second);
            }
            out << header << '\n' << values << '\n';
        } else {
            for (const auto& [k, v] : rows)
                out << k << ": " << v << '\n';
        }
    }
    if (!failure.empty()) {
        err << "error: " << failure << '\n';
        return computation_error;
    }
    return ok;
}

} // namespace qprim::cli
