#include "primesum/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "primesum/errors.hpp"
#include "primesum/parallel.hpp"
#include "primesum/prime_embed.hpp"
#include "primesum/rng.hpp"
#include "primesum/spectral.hpp"

namespace primesum::experiment {

using report::Cell;
using report::FinalReport;
using report::Table;
using report::integer;
using report::real;
using sumsets::SubsetOfZm;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) return parts;
        start = pos + 1;
    }
}

u64 parse_u64(const std::string& s, const std::string& context) {
    u64 v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ConfigError(context + ": '" + s + "' is not a nonnegative integer");
    return v;
}

double parse_double(const std::string& s, const std::string& context) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ConfigError(context + ": '" + s + "' is not a number");
    return v;
}

bool in_unit_interval(double v) { return v > 0 && v <= 1; }

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

// Largest W whose primorial is at most limit (at least 2 when limit >= 2).
u64 largest_feasible_W(u64 limit) {
    u64 best = 0, m = 1;
    for (u64 p = 2; p < 64; ++p) {
        if (!ntheory::is_prime(p)) continue;
        if (m > limit / p) break;
        m *= p;
        best = p;
    }
    return best;
}

}  // namespace

SubsetRule SubsetRule::parse(const std::string& s) {
    const auto parts = split(s, ':');
    SubsetRule r;
    if (parts[0] == "all" && parts.size() == 1) return r;
    if (parts[0] == "residue" && parts.size() == 3) {
        r.kind = Kind::ResidueFilter;
        r.b0 = parse_u64(parts[1], "residue rule");
        r.m0 = parse_u64(parts[2], "residue rule");
        if (r.m0 == 0 || r.b0 >= r.m0) throw ConfigError("residue rule: need 0 <= b0 < m0");
        return r;
    }
    if (parts[0] == "random" && parts.size() == 3) {
        r.kind = Kind::RandomThinning;
        r.density = parse_double(parts[1], "random rule");
        r.seed = parse_u64(parts[2], "random rule");
        if (!in_unit_interval(r.density)) throw ConfigError("random rule: density must lie in (0, 1]");
        return r;
    }
    throw ConfigError("unknown subset rule '" + s + "' (expected all, residue:b0:m0 or random:delta:seed)");
}

std::string SubsetRule::str() const {
    switch (kind) {
        case Kind::AllPrimes: return "all";
        case Kind::ResidueFilter: return "residue:" + std::to_string(b0) + ":" + std::to_string(m0);
        case Kind::RandomThinning: return "random:" + report::format_real(density) + ":" + std::to_string(seed);
    }
    return "";
}

double ExperimentConfig::sigma_value() const { return sigma.value_or(eps / 20); }

double ExperimentConfig::eps0_value() const {
    if (eps0) return *eps0;
    return std::min(embed::eps0_limit(sigma_value(), delta), 0.01);
}

void ExperimentConfig::validate() const {
    if (n < 100 || n > kMaxN)
        throw ConfigError("n must lie in [100, " + std::to_string(kMaxN) + "], got " + std::to_string(n));
    if (W < 2) throw ConfigError("W must be >= 2");
    const u64 max_w = largest_feasible_W(2 * n);
    u64 m = 0;
    try {
        m = ntheory::primorial(W).value();
    } catch (const OverflowError&) {
        throw ConfigError("primorial of W = " + std::to_string(W) + " overflows; for n = " + std::to_string(n) +
                          " use 2 <= W <= " + std::to_string(max_w));
    }
    if (m > 2 * n)
        throw ConfigError("W = " + std::to_string(W) + " gives m = " + std::to_string(m) + " > 2n; for n = " +
                          std::to_string(n) + " use 2 <= W <= " + std::to_string(max_w));
    if (!in_unit_interval(delta)) throw ConfigError("delta must lie in (0, 1]");
    if (!(eps > 0 && eps < 1)) throw ConfigError("eps must lie in (0, 1)");
    const double s = sigma_value();
    if (!(s > 0 && s < eps / 10)) throw ConfigError("sigma must lie in (0, eps/10)");
    if (!in_unit_interval(eps0_value())) throw ConfigError("eps0 must lie in (0, 1]");
    if (k < 2) throw ConfigError("k must be >= 2");
    if (rule.kind == SubsetRule::Kind::ResidueFilter && (rule.m0 == 0 || rule.b0 >= rule.m0))
        throw ConfigError("residue rule: need 0 <= b0 < m0");
    if (rule.kind == SubsetRule::Kind::RandomThinning && !in_unit_interval(rule.density))
        throw ConfigError("random rule: density must lie in (0, 1]");
    const double phi = static_cast<double>(ntheory::primorial(W).totient());
    const double work = phi * (phi + 1) / 2 * static_cast<double>(4 * n / m);
    if (work > kMaxWork)
        throw ConfigError("pair work " + report::format_real(work) + " exceeds the 1e9 cap; lower W or n");
}

std::vector<u64> build_subset(const SubsetRule& rule, const ntheory::PrimeTable& primes) {
    std::vector<u64> out;
    switch (rule.kind) {
        case SubsetRule::Kind::AllPrimes: return primes.primes;
        case SubsetRule::Kind::ResidueFilter:
            for (u64 p : primes.primes)
                if (p % rule.m0 == rule.b0) out.push_back(p);
            return out;
        case SubsetRule::Kind::RandomThinning: {
            SplitMix64 rng(rule.seed);
            for (u64 p : primes.primes)
                if (rng.uniform() < rule.density) out.push_back(p);
            return out;
        }
    }
    return out;
}

FinalReport run_pipeline(const ExperimentConfig& cfg) {
    cfg.validate();
    FinalReport rep;
    const double sigma = cfg.sigma_value();
    rep.config = {{"n", integer(cfg.n)},
                  {"W", integer(cfg.W)},
                  {"delta", real(cfg.delta)},
                  {"rule", cfg.rule.str()},
                  {"eps", real(cfg.eps)},
                  {"sigma", real(sigma)},
                  {"eps0", real(cfg.eps0_value())},
                  {"k", integer(cfg.k)},
                  {"seed", integer(cfg.seed)},
                  {"rng", std::string("splitmix64")}};

    const auto primes = ntheory::sieve_primes(cfg.n);
    const std::vector<u64> A = build_subset(cfg.rule, primes);
    const embed::ResiduePartition part = embed::partition_and_densities(A, cfg.n, cfg.W);
    const u64 m = part.modulus.value();
    rep.config["m"] = integer(m);

    Table classes{{"b", "primes", "members", "delta_b", "good"}, {}};
    double weighted = 0;
    u64 class_members = 0;
    for (const auto& c : part.classes) {
        const bool good = std::binary_search(part.good.begin(), part.good.end(), c.b);
        classes.rows.push_back({integer(c.b), integer(c.primes.size()), integer(c.members.size()), real(c.delta_b), good});
        weighted += c.delta_b * static_cast<double>(c.primes.size());
        class_members += c.members.size();
    }
    rep.tables["classes"] = std::move(classes);
    Table residual{{"prime", "in_A"}, {}};
    for (u64 p : part.residual_primes)
        residual.rows.push_back(
            {integer(p), std::binary_search(part.residual_members.begin(), part.residual_members.end(), p)});
    rep.tables["residual"] = std::move(residual);

    const u64 reconciled = part.member_count - part.residual_members.size();
    rep.check("exact: sum_b delta_b |P_b| = |A| - |A among primes dividing m|", real(weighted), integer(reconciled),
              close(weighted, static_cast<double>(reconciled)));
    rep.check("exact: sum_b |A_b| = |A| - |A among primes dividing m|", integer(class_members), integer(reconciled),
              class_members == reconciled);

    Table summary{{"quantity", "value"}, {}};
    auto note = [&](const std::string& key, Cell v) { summary.rows.push_back({key, std::move(v)}); };
    note("relative_density", real(part.delta));
    note("good_classes", integer(part.good.size()));

    const std::vector<u64>& G = part.good;
    if (G.empty()) {
        note("final_bound", real(0));
        rep.tables["summary"] = std::move(summary);
        return rep;
    }

    const u64 N = embed::choose_N(cfg.n, m);
    note("N", integer(N));
    std::vector<embed::EmbeddedClass> ecs(G.size());
    parallel_for(G.size(), [&](std::size_t i) { ecs[i] = embed::embed_class(part, G[i], N); });

    Table embedding{{"b", "embedded", "mass", "mass_threshold", "mass_pass", "zero_mode_error", "offpeak_sup",
                     "reference_bound", "fourier_l3_norm"},
                    {}};
    std::vector<embed::Deficit> deficits(G.size());
    std::vector<double> l3(G.size());
    parallel_for(G.size(), [&](std::size_t i) {
        deficits[i] = embed::pseudorandom_deficit(ecs[i]);
        l3[i] = spectral::lp_fourier_norm(ecs[i].f, 3.0);
    });
    u64 mass_pass = 0, count_mismatch = 0;
    double eps0 = cfg.eps0_value();
    for (std::size_t i = 0; i < G.size(); ++i) {
        const auto& ec = ecs[i];
        const auto mass = embed::embedding_mass_check(ec, ec.delta_b);
        mass_pass += mass.pass;
        const auto& members = part.cls(G[i]).members;
        const auto in_range = std::count_if(members.begin(), members.end(),
                                            [&](u64 a) { return a >= m + ec.b && a <= m * N + ec.b; });
        count_mismatch += static_cast<u64>(in_range) != ec.indicator.size();
        embedding.rows.push_back({integer(ec.b), integer(ec.indicator.size()), real(mass.mass), real(mass.threshold),
                                  mass.pass, real(deficits[i].zero_mode_error), real(deficits[i].offpeak_sup),
                                  real(deficits[i].reference_bound), real(l3[i])});
        const double alpha = ec.f.mean();
        if (alpha > 0) eps0 = std::min(eps0, embed::eps0_limit(sigma, alpha));
    }
    rep.tables["embedding"] = std::move(embedding);
    rep.check("exact: |embedded set| = |A_b in [m+b, mN+b]| for every good b", integer(count_mismatch), integer(0),
              count_mismatch == 0);
    rep.check("asymptotic: embedding mass >= delta_b/16 for every good b", integer(mass_pass), integer(G.size()),
              mass_pass == G.size());
    note("eps0_used", real(eps0));

    std::vector<std::optional<embed::Decomposition>> decomps(G.size());
    parallel_for(G.size(), [&](std::size_t i) { decomps[i] = spectral::green_decompose(ecs[i].f, eps0, sigma); });
    double mean_gap = 0;
    for (std::size_t i = 0; i < G.size(); ++i)
        mean_gap = std::max(mean_gap, std::abs(decomps[i]->f1.mean() - ecs[i].f.mean()));
    rep.check("exact: max |E f1 - E f| <= 1e-9 over good classes", real(mean_gap), real(1e-9), mean_gap <= 1e-9);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = i; j < G.size(); ++j) pairs.emplace_back(i, j);
    std::vector<embed::PairReport> reports(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t t) {
        const auto [i, j] = pairs[t];
        reports[t] = embed::pair_sumset_report(ecs[i], ecs[j], *decomps[i], *decomps[j], cfg.eps, eps0, sigma);
    });
    Table pair_table{{"b", "bp", "support", "support_fraction", "target", "pass", "embedded_sumset", "main_term_count",
                      "err12_l2sq", "err21_l2sq", "err22_l2sq"},
                     {}};
    u64 pair_pass = 0, support_mismatch = 0;
    for (const auto& pr : reports) {
        pair_pass += pr.pass;
        support_mismatch += pr.support_count != pr.embedded_sumset;
        pair_table.rows.push_back({integer(pr.b1), integer(pr.b2), integer(pr.support_count), real(pr.support_fraction),
                                   real(pr.target), pr.pass, integer(pr.embedded_sumset),
                                   integer(static_cast<u64>(pr.proof.main_term_count)), real(pr.proof.errors[0].l2_squared),
                                   real(pr.proof.errors[1].l2_squared), real(pr.proof.errors[2].l2_squared)});
    }
    rep.tables["pairs"] = std::move(pair_table);
    rep.check("exact: support of f_b * f_b' = |A_b + A_b' mod N| for every pair", integer(support_mismatch), integer(0),
              support_mismatch == 0);
    rep.check("asymptotic: support fraction >= (delta_b + delta_b')/2 - eps for every pair", integer(pair_pass),
              integer(pairs.size()), pair_pass == pairs.size());

    const embed::DeltaAggregate agg = embed::aggregate_delta(part, cfg.eps);
    std::vector<double> Delta(m, 0);
    Table delta_table{{"x", "Delta", "witness_b", "witness_bp"}, {}};
    double min_delta = 1;
    for (const auto& e : agg.entries) {
        Delta[e.x] = e.delta;
        min_delta = std::min(min_delta, e.delta);
        delta_table.rows.push_back({integer(e.x), real(e.delta), integer(e.witness_b), integer(e.witness_bp)});
    }
    rep.tables["delta"] = std::move(delta_table);
    rep.check("exact: min Delta_x >= delta/2 over G+G", real(min_delta), real(part.delta / 2),
              min_delta >= part.delta / 2 - 1e-12);

    // Hoelder chain over G + G in Z_m.
    const SubsetOfZm gset = SubsetOfZm::from_members(m, G);
    const auto hist = sumsets::rep_histogram(gset);
    std::vector<double> pair_sum(m, 0);
    double pair_total = 0, delta_sum = 0;
    for (u64 b : G) delta_sum += part.cls(b).delta_b;
    for (u64 b : G)
        for (u64 bp : G) {
            const double v = (part.cls(b).delta_b + part.cls(bp).delta_b) / 2;
            pair_sum[(b + bp) % m] += v;
            pair_total += v;
        }
    Table s5{{"x", "r", "gamma", "Delta"}, {}};
    const double k = cfg.k, kp = k / (k - 1);
    double r_gamma = 0, r_k = 0, delta_kp = 0, delta_l1 = 0, worst_gap = -1;
    u64 sumset_size = 0;
    for (u64 x = 0; x < m; ++x) {
        const u64 r = hist.r[x];
        if (r == 0) continue;
        ++sumset_size;
        const double gamma = pair_sum[x] / static_cast<double>(r);
        worst_gap = std::max(worst_gap, gamma - Delta[x]);
        r_gamma += static_cast<double>(r) * gamma;
        r_k += std::pow(static_cast<double>(r), k);
        delta_kp += std::pow(Delta[x], kp);
        delta_l1 += Delta[x];
        s5.rows.push_back({integer(x), integer(r), real(gamma), real(Delta[x])});
    }
    rep.tables["section5"] = std::move(s5);
    const double r_norm = std::pow(r_k, 1 / k);
    const double delta_norm = std::pow(delta_kp, 1 / kp);
    const double chain = std::pow(r_gamma / r_norm, kp);
    rep.check("exact: max (gamma_x - Delta_x) <= 0 over G+G", real(worst_gap), real(0), worst_gap <= 1e-12);
    rep.check("exact: sum r(x) gamma_x = sum over GxG of (delta_b + delta_b')/2", real(r_gamma), real(pair_total),
              close(r_gamma, pair_total));
    const double g_identity = static_cast<double>(G.size()) * delta_sum;
    rep.check("exact: sum over GxG of (delta_b + delta_b')/2 = |G| sum_G delta_b", real(pair_total), real(g_identity),
              close(pair_total, g_identity));
    rep.check("exact: sum r gamma <= |r|_k |Delta|_{k/(k-1)}", real(r_gamma), real(r_norm * delta_norm),
              r_gamma <= r_norm * delta_norm * (1 + 1e-12));
    rep.check("exact: chain value <= sum Delta_x^{k/(k-1)}", real(chain), real(delta_kp), chain <= delta_kp * (1 + 1e-12));
    rep.check("exact: sum Delta_x^{k/(k-1)} <= sum Delta_x", real(delta_kp), real(delta_l1), delta_kp <= delta_l1 * (1 + 1e-12));
    const auto hb = sumsets::holder_lower_bound(gset, cfg.k);
    rep.check("exact: |G+G| >= Hoelder bound on G", integer(hb.actual), real(hb.bound),
              static_cast<double>(hb.actual) >= hb.bound - 1e-9);

    const double scale = static_cast<double>(cfg.n) / static_cast<double>(m);
    const double final_bound = std::max(0.0, chain - cfg.eps * static_cast<double>(sumset_size)) * scale;
    rep.check("exact: final bound <= sum max(0, Delta_x - eps) n/m", real(final_bound), real(agg.lower_bound),
              final_bound <= agg.lower_bound * (1 + 1e-12));
    note("sumset_G", integer(sumset_size));
    note("chain_value", real(chain));
    note("prop32_bound", real(agg.lower_bound));
    note("final_bound", real(final_bound));

    const double inv = part.delta > 0 ? std::log(1 / part.delta) : 0;
    const double x_exp = inv > 0 && std::log(inv) > 0 ? std::pow(inv, 2.0 / 3.0) * std::cbrt(std::log(inv)) : 0;
    note("shape_exponent", real(x_exp));
    if (cfg.n <= kMaxExactSumsetN && !A.empty()) {
        const auto sums = sumsets::integer_sumset(A, A);
        const u64 actual = sums.size();
        note("actual_sumset", integer(actual));
        note("fitted_constant", real(static_cast<double>(actual) / (part.delta * static_cast<double>(cfg.n) * std::exp(-x_exp))));
        rep.check("asymptotic: sum max(0, Delta_x - eps) n/m <= |A_n + A_n|", real(agg.lower_bound), integer(actual),
                  agg.lower_bound <= static_cast<double>(actual));
        rep.check("asymptotic: final bound <= |A_n + A_n|", real(final_bound), integer(actual),
                  final_bound <= static_cast<double>(actual));
        if (cfg.rule.kind == SubsetRule::Kind::ResidueFilter) {
            const u64 target = (2 * cfg.rule.b0) % cfg.rule.m0;
            const auto outside = std::count_if(sums.begin(), sums.end(), [&](u64 s) { return s % cfg.rule.m0 != target; });
            rep.check("exact: A_n + A_n inside 2 b0 mod m0", integer(static_cast<u64>(outside)), integer(0), outside == 0);
        }
    }
    rep.tables["summary"] = std::move(summary);
    return rep;
}

RandomHostSummary simulate_random_host(const RandomSetExperiment& exp) {
    if (exp.N < 1 || exp.N > 1'000'000) throw ConfigError("simulate-random: N must lie in [1, 1e6]");
    if (exp.trials < 1 || exp.trials > 10'000) throw ConfigError("simulate-random: trials must lie in [1, 1e4]");
    if (!in_unit_interval(exp.p)) throw ConfigError("simulate-random: p must lie in (0, 1]");
    if (!in_unit_interval(exp.alpha)) throw ConfigError("simulate-random: alpha must lie in (0, 1]");
    if (!(exp.beta > 0 && exp.beta < 1)) throw ConfigError("simulate-random: beta must lie in (0, 1)");
    if (exp.k < 2) throw ConfigError("simulate-random: k must be >= 2");

    RandomHostSummary out;
    out.exp = exp;
    out.theta = exp.N > 1 ? -std::log(exp.p) / std::log(static_cast<double>(exp.N)) : 0;
    std::vector<u64> seeds(exp.trials);
    SplitMix64 master(exp.seed);
    for (auto& s : seeds) s = master.next();
    out.trials.resize(exp.trials);

    parallel_for(exp.trials, [&](std::size_t t) {
        SplitMix64 rng(seeds[t]);
        TrialResult& tr = out.trials[t];
        tr.trial = t;
        std::vector<u64> host;
        for (u64 x = 0; x < exp.N; ++x)
            if (rng.uniform() < exp.p) host.push_back(x);
        tr.host_size = host.size();
        const double want = exp.alpha * static_cast<double>(host.size());
        if (want < 1) {
            tr.skipped = true;
            return;
        }
        shuffle(host, rng);
        host.resize(static_cast<std::size_t>(std::ceil(want - 1e-9)));
        tr.subset_size = host.size();
        const SubsetOfZm a = SubsetOfZm::from_members(exp.N, host);
        tr.sumset = sumsets::sumset_convolution(a, a).size();
        tr.fraction = static_cast<double>(tr.sumset) / static_cast<double>(exp.N);
        const auto hist = sumsets::rep_histogram(a);
        u64 moment = 0;
        for (u64 r : hist.r) moment = ntheory::checked_add(moment, ntheory::checked_pow(r, exp.k));
        const long double kk = exp.k;
        const double bound = static_cast<double>(std::exp(
            (2 * kk * std::log(static_cast<long double>(tr.subset_size)) - std::log(static_cast<long double>(moment))) /
            (kk - 1)));
        if (static_cast<double>(tr.sumset) < bound - 1e-9)
            throw InvariantViolation("simulate-random: trial " + std::to_string(t) + " has |A+A| below its Hoelder bound");
        tr.holder_fraction = bound / static_cast<double>(exp.N);
    });

    bool first = true;
    double total = 0;
    for (const auto& tr : out.trials) {
        if (tr.skipped) {
            ++out.skipped;
            continue;
        }
        total += tr.fraction;
        out.min = first ? tr.fraction : std::min(out.min, tr.fraction);
        out.max = first ? tr.fraction : std::max(out.max, tr.fraction);
        first = false;
        out.reached_beta += tr.fraction >= exp.beta;
    }
    const u64 used = exp.trials - out.skipped;
    out.mean = used ? total / static_cast<double>(used) : 0;
    return out;
}

FinalReport random_host_report(const RandomHostSummary& s) {
    FinalReport rep;
    rep.config = {{"N", integer(s.exp.N)},         {"p", real(s.exp.p)},
                  {"theta", real(s.theta)},        {"alpha", real(s.exp.alpha)},
                  {"beta", real(s.exp.beta)},      {"trials", integer(s.exp.trials)},
                  {"seed", integer(s.exp.seed)},   {"k", integer(s.exp.k)},
                  {"rng", std::string("splitmix64")}};
    Table trials{{"trial", "host_size", "subset_size", "sumset", "fraction", "holder_fraction", "skipped"}, {}};
    u64 sound = 0;
    for (const auto& t : s.trials) {
        trials.rows.push_back({integer(t.trial), integer(t.host_size), integer(t.subset_size), integer(t.sumset),
                               real(t.fraction), real(t.holder_fraction), t.skipped});
        if (!t.skipped && t.fraction >= t.holder_fraction - 1e-12) ++sound;
    }
    rep.tables["trials"] = std::move(trials);
    rep.tables["summary"] = Table{{"quantity", "value"},
                                  {{std::string("mean"), real(s.mean)},
                                   {std::string("min"), real(s.min)},
                                   {std::string("max"), real(s.max)},
                                   {std::string("skipped"), integer(s.skipped)},
                                   {std::string("reached_beta"), integer(s.reached_beta)}}};
    const u64 used = s.exp.trials - s.skipped;
    rep.check("exact: |A+A| >= Hoelder bound in every trial", integer(sound), integer(used), sound == used);
    rep.check("asymptotic: |A+A|/N >= beta in every trial", integer(s.reached_beta), integer(used), s.reached_beta == used);
    return rep;
}

SubsetOfZm parse_set_spec(const std::string& spec, const ntheory::FactoredModulus& m) {
    const auto parts = split(spec, ':');
    const std::string& kind = parts[0];
    const u64 mod = m.value();
    SubsetOfZm out(mod);
    if (kind == "units" && parts.size() == 1) return SubsetOfZm::units(m);
    if (kind == "all" && parts.size() == 1) {
        for (u64 x = 0; x < mod; ++x) out.insert(x);
        return out;
    }
    if (kind == "list" && parts.size() == 2) {
        if (parts[1].empty()) return out;
        for (const auto& item : split(parts[1], ',')) {
            const u64 x = parse_u64(item, "list set spec");
            if (x >= mod) throw ConfigError("list set spec: " + item + " is outside Z_" + std::to_string(mod));
            out.insert(x);
        }
        return out;
    }
    if (kind == "range" && parts.size() == 3) {
        const u64 a = parse_u64(parts[1], "range set spec"), b = parse_u64(parts[2], "range set spec");
        if (a > b || b > mod) throw ConfigError("range set spec: need a <= b <= m");
        for (u64 x = a; x < b; ++x) out.insert(x);
        return out;
    }
    if (kind == "units-mod" && parts.size() == 3) {
        const u64 b0 = parse_u64(parts[1], "units-mod set spec"), m0 = parse_u64(parts[2], "units-mod set spec");
        if (m0 == 0 || b0 >= m0) throw ConfigError("units-mod set spec: need 0 <= b0 < m0");
        for (u64 x = 0; x < mod; ++x)
            if (ntheory::binary_gcd(x, mod) == 1 && x % m0 == b0) out.insert(x);
        return out;
    }
    if ((kind == "random" || kind == "random-units") && parts.size() == 3) {
        const double p = parse_double(parts[1], kind + " set spec");
        const u64 seed = parse_u64(parts[2], kind + " set spec");
        if (!(p >= 0 && p <= 1)) throw ConfigError(kind + " set spec: p must lie in [0, 1]");
        SplitMix64 rng(seed);
        for (u64 x = 0; x < mod; ++x) {
            if (kind == "random-units" && ntheory::binary_gcd(x, mod) != 1) continue;
            if (rng.uniform() < p) out.insert(x);
        }
        return out;
    }
    throw ConfigError("unknown set spec '" + spec + "'");
}

}  // namespace primesum::experiment
