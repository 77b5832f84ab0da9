#include "qprim/presets.hpp"

#include "qprim/error.hpp"

namespace qprim::presets {

namespace {

constexpr i128 kD1 = 4472988326827347533LL;  // (d/p) = -1 for 3 <= p <= 283
constexpr i128 kD3 = static_cast<i128>(9828323860172600203ULL);  // (-d/p) = -1 for 3 <= p <= 277

search::SearchConfig config(i128 d, i128 d1, int alpha, int sign, i128 shift, i128 g_base)
{
    search::SearchConfig c;
    c.d = d;
    c.d1 = d1;
    c.alpha = alpha;
    c.sign = sign;
    c.shift = shift;
    c.g_base = g_base;
    return c;
}

Preset from_config(std::string name, std::string description, std::string source_form,
                   search::SearchConfig cfg, i64 k, std::uint64_t expected_c, std::uint64_t prefix)
{
    Preset p;
    p.name = std::move(name);
    p.description = std::move(description);
    p.source_form = std::move(source_form);
    cfg.k_lo = cfg.k_hi = k;
    p.poly = search::candidate_poly(cfg);
    p.g = checked_mul(static_cast<i128>(k) * k, cfg.g_base);
    p.config = cfg;
    p.k = k;
    p.expected_c = expected_c;
    p.default_prefix = prefix;
    return p;
}

std::vector<Preset> build()
{
    std::vector<Preset> out;

    Preset lehmer;
    lehmer.name = "lehmer";
    lehmer.description = "326 along the primes 326n^2+3";
    lehmer.source_form = "326X^2+3";
    lehmer.poly = poly::PolyZ({3, 0, 326});
    lehmer.g = 326;
    lehmer.config = config(163, 163, 1, 1, 0, 326);
    lehmer.k = 1;
    lehmer.expected_c = 206;
    lehmer.failing_prime = 1838843753;
    lehmer.n_at_failure = 2375;
    lehmer.residual_index = 83;
    out.push_back(lehmer);

    Preset griffin;
    griffin.name = "griffin";
    griffin.description = "10 along the primes 10n^2+7";
    griffin.source_form = "10X^2+7";
    griffin.poly = poly::PolyZ({7, 0, 10});
    griffin.g = 10;
    griffin.config = config(15, 5, 1, 1, 0, 10);
    griffin.k = 1;
    griffin.expected_c = 16;
    griffin.failing_prime = 7297;
    out.push_back(griffin);

    Preset euler;
    euler.name = "euler41";
    euler.description = "Euler's prime-rich quadratic";
    euler.source_form = "X^2+X+41";
    euler.poly = poly::PolyZ({41, 1, 1});
    out.push_back(euler);

    Preset beeger;
    beeger.name = "beeger27941";
    beeger.description = "Beeger's prime-rich quadratic";
    beeger.source_form = "X^2+X+27941";
    beeger.poly = poly::PolyZ({27941, 1, 1});
    out.push_back(beeger);

    Preset e1 = from_config("example1", "record for positive discriminant with d_1 = 252017",
                            "4d1(X+8393)^2-4d2+1", config(kD1, 252017, 2, -1, 8393, 252017), 26, 22779, 500);
    e1.failing_prime = static_cast<u128>(432050978399143373ULL);
    out.push_back(e1);

    out.push_back(from_config("example2", "record for positive discriminant, g = 17^2*230849",
                              "64d1(X+728069)^2-64d2+1", config(kD1, 230849, 6, -1, 728069, 230849), 17,
                              25581, 500));
    out.push_back(from_config("example2-g24", "record with |g| < 100, g = 24", "64d1(X+56943)^2-64d2+1",
                              config(kD1, 230849, 6, -1, 56943, 6), 2, 21690, 500));
    out.push_back(from_config("example3", "negative discriminant, f = 16d1X^2+16d2+1", "16d1X^2+16d2+1",
                              config(kD3, 54151, 4, 1, 0, 54151), 662, 18176, 200));
    out.push_back(from_config("example3-f1", "f1(X) = f(X+599206)", "16d1(X+599206)^2+16d2+1",
                              config(kD3, 54151, 4, 1, 599206, 202), 19, 29083, 200));
    out.push_back(from_config("example3-f2", "record for negative discriminant", "d1(X+1484224)^2+d2+1",
                              config(kD3, 54151, 0, 1, 1484224, 6702), 51, 31082, 200));
    return out;
}

} // namespace

const std::vector<Preset>& preset_registry()
{
    static const std::vector<Preset> registry = build();
    return registry;
}

const Preset& find_preset(const std::string& name)
{
    for (const auto& p : preset_registry())
        if (p.name == name)
            return p;
    std::string known;
    for (const auto& p : preset_registry())
        known += (known.empty() ? "" : ", ") + p.name;
    throw Error(ErrorKind::invalid_input, "unknown preset '" + name + "' (known: " + known + ")");
}

} // namespace qprim::presets
