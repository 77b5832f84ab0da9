#include "qprim/search.hpp"

#include "qprim/arith.hpp"
#include "qprim/charsums.hpp"
#include "qprim/densities.hpp"
#include "qprim/error.hpp"
#include "qprim/parallel.hpp"
#include "qprim/streaks.hpp"

#include <json.hpp>

#include <algorithm>
#include <ctime>
#include <fstream>
#include <sstream>

namespace qprim::search {

using nlohmann::json;

namespace {

[[noreturn]] void bad_config(const std::string& what)
{
    throw Error(ErrorKind::invalid_config, what);
}

std::string utc_now()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Checkpoint {
    i64 k = 0;
    i64 best_k = 0;
    std::uint64_t best_c = 0;
    std::optional<u128> best_failing_prime;
};

std::optional<Checkpoint> load_checkpoint(const std::string& path, const std::string& hash)
{
    std::ifstream in(path);
    if (!in)
        return std::nullopt;
    std::optional<Checkpoint> last;
    std::string line;
    std::size_t line_no = 0;
    std::size_t last_good = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        const auto fail = [&](const std::string& why) {
            throw Error(ErrorKind::checkpoint_error,
                        path + ":" + std::to_string(line_no) + ": " + why +
                            "; truncate the file to its last valid line (" + std::to_string(last_good) +
                            ") and rerun to resume");
        };
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception&) {
            fail("not a JSON record");
        }
        Checkpoint c;
        try {
            if (j.at("config_hash").get<std::string>() != hash)
                fail("config hash " + j.at("config_hash").get<std::string>() + " does not match " + hash);
            c.k = j.at("k").get<i64>();
            c.best_k = j.at("best_k").get<i64>();
            c.best_c = j.at("best_c").get<std::uint64_t>();
            j.at("c").get<std::uint64_t>();
            j.at("timestamp").get<std::string>();
            if (j.contains("best_failing_prime") && !j["best_failing_prime"].is_null())
                c.best_failing_prime = static_cast<u128>(parse_i128(j["best_failing_prime"].get<std::string>()));
        } catch (const json::exception& e) {
            fail(std::string("missing or malformed field: ") + e.what());
        }
        last = c;
        last_good = line_no;
    }
    return last;
}

} // namespace

void validate(const SearchConfig& cfg)
{
    if (cfg.d == 0 || !arith::is_squarefree(cfg.d))
        bad_config("d must be a nonzero squarefree integer");
    if (cfg.d1 == 0 || cfg.d % cfg.d1 != 0)
        bad_config("d1 must divide d");
    if (cfg.alpha < 0 || cfg.alpha > 60)
        bad_config("alpha must lie in [0, 60]");
    if (cfg.sign != 1 && cfg.sign != -1)
        bad_config("sign must be +1 or -1");
    if (cfg.shift < 0)
        bad_config("shift must be nonnegative");
    if (cfg.r1 <= 0 || cfg.r2 <= 0 || !is_perfect_square(checked_mul(cfg.r1, cfg.r2)))
        bad_config("r1, r2 must be positive with r1*r2 a perfect square");
    if (cfg.k_lo < 1 || cfg.k_hi < cfg.k_lo)
        bad_config("k range must satisfy 1 <= k_lo <= k_hi");
    if (cfg.n_cap < 0)
        bad_config("n_cap must be nonnegative");
    if (!charsums::in_base_set(cfg.g_base))
        bad_config("g_base must not be -1 or a perfect square");
}

poly::PolyZ candidate_poly(const SearchConfig& cfg)
{
    validate(cfg);
    const i128 two_a = i128{1} << cfg.alpha;
    const i128 A = checked_mul(checked_mul(two_a, cfg.d1), cfg.r1);
    const i128 C = checked_add(cfg.sign * checked_mul(checked_mul(two_a, cfg.d2()), cfg.r2), 1);
    const i128 s = cfg.shift;
    poly::PolyZ f({checked_add(checked_mul(A, checked_mul(s, s)), C), checked_mul(2 * A, s), A});
    const i128 g = f.content();
    if (g > 1) {
        std::vector<i128> c = f.coefficients();
        for (auto& x : c)
            x /= g;
        f = poly::PolyZ(std::move(c));
    }
    return f;
}

std::vector<std::string> candidate_warnings(const SearchConfig& cfg)
{
    const poly::PolyZ f = candidate_poly(cfg);
    std::vector<std::string> w;
    const i128 f0 = poly::eval(f, 0);
    const i128 f1 = poly::eval(f, 1);
    if (f0 % 2 == 0 && f1 % 2 == 0)
        w.emplace_back("every value is even");
    else if (f0 % 2 == 0 || f1 % 2 == 0)
        w.emplace_back("values are even for one parity of n");
    const poly::QuadraticPoly q = poly::QuadraticPoly::from_poly(f);
    if (is_perfect_square(q.d()))
        w.emplace_back("square discriminant: f is reducible");
    else if (!poly::in_family_F(q))
        w.emplace_back("f is outside the admissible family");
    if (q.a() < 0)
        w.emplace_back("negative leading coefficient");
    return w;
}

std::vector<i128> admissible_bases(const poly::QuadraticPoly& f, i128 g_bound)
{
    std::vector<i128> out;
    if (g_bound < 2)
        return out;
    for (const auto& D : charsums::admissible_discriminants(f, 4 * g_bound)) {
        const i128 m = D.D % 4 == 0 ? D.D / 4 : D.D;
        for (i128 k = 1; checked_mul(k * k, abs128(m)) <= g_bound; ++k) {
            const i128 g = k * k * m;
            if (charsums::in_base_set(g))
                out.push_back(g);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double quality(const poly::QuadraticPoly& f)
{
    return densities::delta(f.to_poly()).value;
}

std::string config_hash(const SearchConfig& cfg)
{
    std::ostringstream s;
    s << "d=" << to_string(cfg.d) << ";d1=" << to_string(cfg.d1) << ";alpha=" << cfg.alpha
      << ";sign=" << cfg.sign << ";shift=" << to_string(cfg.shift) << ";r1=" << to_string(cfg.r1)
      << ";r2=" << to_string(cfg.r2) << ";g_base=" << to_string(cfg.g_base) << ";k_lo=" << cfg.k_lo
      << ";k_hi=" << cfg.k_hi << ";n_cap=" << cfg.n_cap;
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s.str()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SearchRecord sweep(const SearchConfig& cfg, const std::string& checkpoint_path, const SweepOptions& options)
{
    const poly::PolyZ f = candidate_poly(cfg);
    const std::string hash = config_hash(cfg);
    if (options.checkpoint_every < 1)
        bad_config("checkpoint interval must be at least 1");

    SearchRecord best;
    best.config_hash = hash;
    i64 next_k = cfg.k_lo;
    if (!checkpoint_path.empty()) {
        if (auto cp = load_checkpoint(checkpoint_path, hash)) {
            next_k = cp->k + 1;
            best.k = cp->best_k;
            best.c = cp->best_c;
            best.failing_prime = cp->best_failing_prime;
            best.lower_bound = !cp->best_failing_prime;
        }
    }

    std::ofstream out;
    if (!checkpoint_path.empty()) {
        out.open(checkpoint_path, std::ios::app);
        if (!out)
            throw Error(ErrorKind::checkpoint_error, "cannot open " + checkpoint_path + " for appending");
    }

    streaks::PrimeValueTable table(f);
    const i64 batch = std::max<i64>(options.checkpoint_every, 4 * static_cast<i64>(options.workers));
    auto last_write = std::chrono::steady_clock::now();
    i64 since_write = 0;
    i64 processed = 0;
    i64 last_k = next_k - 1;
    std::uint64_t last_c = 0;

    const auto write_line = [&] {
        if (!out.is_open())
            return;
        json j{{"k", last_k},
               {"c", last_c},
               {"best_k", best.k},
               {"best_c", best.c},
               {"config_hash", hash},
               {"timestamp", utc_now()},
               {"best_failing_prime", best.failing_prime ? json(to_string(*best.failing_prime)) : json(nullptr)}};
        out << j.dump() << '\n';
        out.flush();
        last_write = std::chrono::steady_clock::now();
        since_write = 0;
    };

    while (next_k <= cfg.k_hi) {
        i64 count = std::min<i64>(batch, cfg.k_hi - next_k + 1);
        if (options.stop_after)
            count = std::min<i64>(count, *options.stop_after - processed);
        if (count <= 0)
            break;
        std::vector<streaks::StreakResult> results(static_cast<std::size_t>(count));
        parallel_for(static_cast<std::uint64_t>(count), options.workers, [&](std::uint64_t i) {
            const i128 k = next_k + static_cast<i64>(i);
            results[i] = streaks::streak(table, checked_mul(k * k, cfg.g_base), cfg.n_cap);
        });
        for (i64 i = 0; i < count; ++i) {
            const auto& r = results[static_cast<std::size_t>(i)];
            last_k = next_k + i;
            last_c = r.count;
            if (best.k == 0 || r.count > best.c) {
                best.k = last_k;
                best.c = r.count;
                best.failing_prime = r.failing_prime;
                best.lower_bound = !r.complete();
            }
            if (++since_write >= options.checkpoint_every ||
                std::chrono::steady_clock::now() - last_write >= options.checkpoint_interval)
                write_line();
        }
        next_k += count;
        processed += count;
    }
    if (since_write > 0)
        write_line();

    best.g = checked_mul(static_cast<i128>(best.k) * best.k, cfg.g_base);
    best.timestamp = utc_now();
    return best;
}

} // namespace qprim::search
