// primesum: command-line front end. Every subcommand builds a report and
// writes it as CSV or JSON. Exit status: 0 ok, 2 bad configuration or
// arguments, 3 an unconditional invariant failed.

#include <cmath>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "primesum/errors.hpp"
#include "primesum/experiment.hpp"
#include "primesum/prime_embed.hpp"
#include "primesum/report.hpp"
#include "primesum/spectral.hpp"
#include "primesum/zm_sumsets.hpp"

using namespace primesum;
using report::Cell;
using report::FinalReport;
using report::Table;
using report::integer;
using report::real;
using ntheory::u64;

namespace {

struct Output {
    std::string format = "csv";
    std::string out = "-";
};

void add_output(CLI::App* cmd, Output& o) {
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "output path, - for stdout");
}

Table key_values(std::initializer_list<std::pair<const char*, Cell>> items) {
    Table t{{"quantity", "value"}, {}};
    for (const auto& [k, v] : items) t.rows.push_back({std::string(k), v});
    return t;
}

Table member_table(const sumsets::SubsetOfZm& s) {
    Table t{{"x"}, {}};
    for (u64 x : s.members()) t.rows.push_back({integer(x)});
    return t;
}

experiment::SubsetRule rule_from(const std::string& rule, double delta, u64 seed) {
    if (rule == "random") {
        experiment::SubsetRule r;
        r.kind = experiment::SubsetRule::Kind::RandomThinning;
        r.density = delta;
        r.seed = seed;
        return r;
    }
    return experiment::SubsetRule::parse(rule);
}

embed::ResiduePartition partition_for(u64 n, u64 W, const std::string& rule, u64 seed) {
    if (n < 2) throw ConfigError("n must be >= 2");
    const auto primes = ntheory::sieve_primes(n);
    return embed::partition_and_densities(experiment::build_subset(rule_from(rule, 1, seed), primes), n, W);
}

FinalReport cmd_sieve(u64 n, bool list) {
    FinalReport rep;
    rep.config = {{"n", integer(n)}};
    const auto t = ntheory::sieve_primes(n);
    rep.tables["summary"] = key_values({{"count", integer(t.primes.size())}, {"largest", integer(t.primes.back())}});
    if (list) {
        Table p{{"prime"}, {}};
        for (u64 q : t.primes) p.rows.push_back({integer(q)});
        rep.tables["primes"] = std::move(p);
    }
    return rep;
}

FinalReport cmd_partition(u64 n, u64 W, const std::string& rule, u64 seed) {
    const auto part = partition_for(n, W, rule, seed);
    FinalReport rep;
    rep.config = {{"n", integer(n)}, {"W", integer(W)}, {"m", integer(part.modulus.value())}, {"rule", rule}};
    Table c{{"b", "primes", "members", "delta_b", "good"}, {}};
    for (const auto& cl : part.classes)
        c.rows.push_back({integer(cl.b), integer(cl.primes.size()), integer(cl.members.size()), real(cl.delta_b),
                          std::binary_search(part.good.begin(), part.good.end(), cl.b)});
    rep.tables["classes"] = std::move(c);
    Table r{{"prime", "in_A"}, {}};
    for (u64 p : part.residual_primes)
        r.rows.push_back({integer(p), std::binary_search(part.residual_members.begin(), part.residual_members.end(), p)});
    rep.tables["residual"] = std::move(r);
    rep.tables["summary"] = key_values({{"primes", integer(part.prime_count)},
                                        {"members", integer(part.member_count)},
                                        {"delta", real(part.delta)},
                                        {"good_classes", integer(part.good.size())}});
    return rep;
}

FinalReport cmd_spectrum(u64 n, u64 W, u64 b, const std::string& rule, u64 seed) {
    const auto part = partition_for(n, W, rule, seed);
    const u64 N = embed::choose_N(n, part.modulus.value());
    const auto ec = embed::embed_class(part, b, N);
    const auto mass = embed::embedding_mass_check(ec, ec.delta_b);
    const auto def = embed::pseudorandom_deficit(ec);
    const auto sf = spectral::dft(ec.f), sn = spectral::dft(ec.nu);
    FinalReport rep;
    rep.config = {{"n", integer(n)}, {"W", integer(W)}, {"b", integer(b)}, {"N", integer(N)}, {"rule", rule}};
    Table t{{"xi", "f_hat_abs", "nu_hat_abs"}, {}};
    for (spectral::Index xi = 0; xi < sf.size(); ++xi)
        t.rows.push_back({integer(static_cast<u64>(xi)), real(sf.magnitude(xi)), real(sn.magnitude(xi))});
    rep.tables["spectrum"] = std::move(t);
    rep.tables["summary"] = key_values({{"embedded", integer(ec.indicator.size())},
                                        {"delta_b", real(ec.delta_b)},
                                        {"mass", real(mass.mass)},
                                        {"zero_mode_error", real(def.zero_mode_error)},
                                        {"offpeak_sup", real(def.offpeak_sup)},
                                        {"reference_bound", real(def.reference_bound)},
                                        {"fourier_l3_norm", real(spectral::lp_fourier_norm(sf, 3.0))}});
    rep.check("asymptotic: embedding mass >= delta_b/16", real(mass.mass), real(mass.threshold), mass.pass);
    rep.check("asymptotic: offpeak sup <= 2 loglog W / W", real(def.offpeak_sup), real(def.reference_bound),
              def.offpeak_sup <= def.reference_bound);
    return rep;
}

FinalReport cmd_decompose(u64 n, u64 W, u64 b, double eps0, double sigma, const std::string& rule, u64 seed) {
    const auto part = partition_for(n, W, rule, seed);
    const u64 N = embed::choose_N(n, part.modulus.value());
    const auto ec = embed::embed_class(part, b, N);
    const auto d = spectral::green_decompose(ec.f, eps0, sigma);
    FinalReport rep;
    rep.config = {{"n", integer(n)}, {"W", integer(W)}, {"b", integer(b)}, {"N", integer(N)},
                  {"eps0", real(eps0)}, {"sigma", real(sigma)}, {"rule", rule}};
    Table t{{"x", "f", "f1", "f2"}, {}};
    for (spectral::Index x = 0; x < ec.f.size(); ++x)
        t.rows.push_back({integer(static_cast<u64>(x)), real(ec.f[x]), real(d.f1[x]), real(d.f2[x])});
    rep.tables["decomposition"] = std::move(t);
    const double f2_sup = spectral::dft(d.f2).sup_norm();
    const double f_sup = spectral::dft(ec.f).sup_norm();
    const double bound = 2 * eps0 * std::max(1.0, f_sup);
    rep.tables["summary"] = key_values({{"large_spectrum", integer(d.large_spectrum.size())},
                                        {"bohr_size", integer(d.bohr.size())},
                                        {"mean_f", real(ec.f.mean())},
                                        {"mean_f1", real(d.f1.mean())},
                                        {"max_f1", real(d.max_f1)},
                                        {"f2_hat_sup", real(f2_sup)}});
    const double gap = std::abs(d.f1.mean() - ec.f.mean());
    rep.check("exact: |E f1 - E f| <= 1e-9", real(gap), real(1e-9), gap <= 1e-9);
    rep.check("exact: min f1 >= 0", real(d.f1.values().minCoeff()), real(0), d.f1.values().minCoeff() >= 0);
    rep.check("exact: sup |f2^| <= 2 eps0 max(1, sup |f^|)", real(f2_sup), real(bound), f2_sup <= bound + 1e-12);
    rep.check("asymptotic: max f1 <= 1 + sigma", real(d.max_f1), real(1 + sigma), d.max_f1 <= 1 + sigma);
    return rep;
}

FinalReport cmd_sumset(u64 m, const std::string& spec, const std::string& spec2) {
    const auto fm = ntheory::factorize(m);
    const auto a = experiment::parse_set_spec(spec, fm);
    const auto b = spec2.empty() ? a : experiment::parse_set_spec(spec2, fm);
    const auto s = sumsets::sumset(a, b);
    FinalReport rep;
    rep.config = {{"m", integer(m)}, {"set_spec", spec}, {"set_spec2", spec2.empty() ? spec : spec2}};
    rep.tables["sumset"] = member_table(s);
    rep.tables["summary"] = key_values({{"card_B1", integer(a.size())}, {"card_B2", integer(b.size())},
                                        {"card_sumset", integer(s.size())}});
    return rep;
}

FinalReport cmd_moments(u64 m, const std::string& spec, unsigned k) {
    const auto fm = ntheory::factorize(m);
    const auto b = experiment::parse_set_spec(spec, fm);
    const auto cert = sumsets::kth_moment(b, k, fm);
    const auto hist = sumsets::rep_histogram(b);
    FinalReport rep;
    rep.config = {{"m", integer(m)}, {"set_spec", spec}, {"k", integer(k)}};
    Table h{{"x", "r_B"}, {}};
    std::vector<u64> R;
    if (cert.S_R) {
        R = sumsets::capital_R(b, fm);
        h.columns.push_back("R");
    }
    for (u64 x = 0; x < m; ++x) {
        std::vector<Cell> row{integer(x), integer(hist.r[x])};
        if (!R.empty()) row.push_back(integer(R[x]));
        h.rows.push_back(std::move(row));
    }
    rep.tables["histogram"] = std::move(h);
    if (cert.S_R) {
        Table st{{"d", "size", "S_d"}, {}};
        const auto strata = sumsets::divisor_stratification(fm);
        for (std::size_t i = 0; i < strata.size(); ++i)
            st.rows.push_back({integer(strata[i].d), integer(strata[i].members.size()), integer(cert.stratified[i].s_d)});
        rep.tables["stratified"] = std::move(st);
        u64 total = 0;
        for (const auto& s : cert.stratified) total += s.s_d;
        rep.check("exact: S_rB <= S_R", integer(cert.S_rB), integer(*cert.S_R), cert.S_rB <= *cert.S_R);
        rep.check("exact: sum_d S_d = S_R", integer(total), integer(*cert.S_R), total == *cert.S_R);
    }
    rep.tables["summary"] = key_values({{"card", integer(b.size())},
                                        {"alpha", real(cert.alpha)},
                                        {"S_rB", integer(cert.S_rB)},
                                        {"S_R", cert.S_R ? integer(*cert.S_R) : Cell{}},
                                        {"comparator", real(cert.comparator)},
                                        {"implied_constant", real(cert.implied_constant)},
                                        {"holder_bound", cert.holder_bound ? real(*cert.holder_bound) : Cell{}},
                                        {"actual_sumset", integer(cert.actual_sumset)}});
    if (cert.holder_bound)
        rep.check("exact: |B+B| >= Hoelder bound", integer(cert.actual_sumset), real(*cert.holder_bound),
                  static_cast<double>(cert.actual_sumset) >= *cert.holder_bound - 1e-9);
    return rep;
}

void block_rows(Table& t, const std::vector<sumsets::BlockStep>& steps) {
    for (const auto& s : steps)
        t.rows.push_back({integer(s.j), integer(s.size), real(s.alpha_j), s.selected,
                          s.bound ? real(*s.bound) : Cell{}, s.cyclic_sumset ? integer(*s.cyclic_sumset) : Cell{},
                          s.integer_sumset ? integer(*s.integer_sumset) : Cell{}});
}

FinalReport cmd_znstar(u64 m, const std::string& spec, std::optional<double> alpha0) {
    const auto fm = ntheory::factorize(m);
    const auto b = experiment::parse_set_spec(spec, fm);
    const auto cert = sumsets::znstar_certificate(b, fm, alpha0);
    FinalReport rep;
    rep.config = {{"m", integer(m)}, {"set_spec", spec}, {"alpha0", alpha0 ? real(*alpha0) : Cell{}}};
    const std::vector<std::string> cols{"j", "size", "alpha_j", "selected", "bound", "cyclic_sumset", "integer_sumset"};
    Table blocks{cols, {}}, consecutive{cols, {}};
    block_rows(blocks, cert.blocks);
    block_rows(consecutive, cert.consecutive_blocks);
    rep.tables["blocks"] = std::move(blocks);
    rep.tables["consecutive_blocks"] = std::move(consecutive);
    rep.tables["summary"] = key_values({{"squarefree", cert.squarefree},
                                        {"card", integer(cert.card)},
                                        {"alpha", real(cert.alpha)},
                                        {"k_formula", cert.k_formula ? integer(*cert.k_formula) : Cell{}},
                                        {"k", integer(cert.k)},
                                        {"radical", integer(cert.radical)},
                                        {"alpha_sum", std::to_string(cert.alpha_sum_num) + "/" + std::to_string(cert.alpha_sum_den)},
                                        {"final_bound", real(cert.final_bound)},
                                        {"consecutive_bound", real(cert.consecutive_bound)},
                                        {"actual_cyclic", integer(cert.actual_cyclic)},
                                        {"actual_integer", integer(cert.actual_integer)},
                                        {"reference_shape", real(cert.reference_shape)}});
    const double actual = static_cast<double>(cert.squarefree ? cert.actual_cyclic : cert.actual_integer);
    rep.check("exact: final bound <= |B+B|", real(cert.final_bound), real(actual), cert.final_bound <= actual + 1e-9);
    if (!cert.squarefree)
        rep.check("exact: sum_j alpha_j = alpha m/m1", std::string(cert.alpha_sum_identity ? "equal" : "differ"),
                  std::string("equal"), cert.alpha_sum_identity);
    return rep;
}

FinalReport cmd_extremal(unsigned s, unsigned t) {
    const auto e = sumsets::extremal_construct(s, t);
    const auto sums = sumsets::sumset(e.B, e.B);
    u64 expected_card = 1;
    for (unsigned i = t; i < s; ++i) expected_card *= e.primes[i] - 1;
    FinalReport rep;
    rep.config = {{"s", integer(s)}, {"t", integer(t)}, {"m", integer(e.m)}};
    rep.tables["summary"] = key_values({{"card", integer(e.B.size())},
                                        {"predicted_alpha", e.predicted_alpha.str()},
                                        {"predicted_sumset", integer(e.predicted_sumset)},
                                        {"actual_sumset", integer(sums.size())},
                                        {"mertens_ratio", s >= 3 ? real(sumsets::mertens_ratio(e.primes.back())) : Cell{}}});
    rep.check("exact: |B| = prod_{i>t} (p_i - 1)", integer(e.B.size()), integer(expected_card), e.B.size() == expected_card);
    rep.check("exact: |B+B| = m/(p_1...p_t)", integer(sums.size()), integer(e.predicted_sumset),
              sums.size() == e.predicted_sumset);
    return rep;
}

FinalReport cmd_ck(double c, unsigned k, unsigned j_max) {
    const auto cs = sumsets::ck_series(c, k, j_max);
    FinalReport rep;
    rep.config = {{"c", real(c)}, {"k", integer(k)}, {"j_max", integer(j_max)}};
    Table t{{"j", "log_term"}, {}};
    for (std::size_t j = 0; j < cs.log_terms.size(); ++j) t.rows.push_back({integer(j), real(cs.log_terms[j])});
    rep.tables["terms"] = std::move(t);
    rep.tables["summary"] = key_values({{"partial_sum", real(static_cast<double>(cs.partial_sum))},
                                        {"log_partial_sum", real(cs.log_partial_sum)},
                                        {"tail_bound", real(cs.tail_bound)},
                                        {"j_max", integer(cs.j_max)},
                                        {"dominant_index", integer(cs.dominant_index)},
                                        {"formula_maximizer_j", real(cs.formula_maximizer_j)},
                                        {"continuous_maximizer_j", real(cs.continuous_maximizer_j)},
                                        {"tail_start_j", real(cs.tail_start_j)}});
    return rep;
}

FinalReport cmd_tail(u64 m, const std::string& spec, unsigned k, double beta, double c) {
    const auto fm = ntheory::factorize(m);
    const auto b = experiment::parse_set_spec(spec, fm);
    const auto tc = sumsets::tail_count(b, k, beta, fm, c);
    FinalReport rep;
    rep.config = {{"m", integer(m)}, {"set_spec", spec}, {"k", integer(k)}, {"beta", real(beta)}, {"c", real(c)}};
    rep.tables["summary"] = key_values({{"count", integer(tc.count)}, {"total", integer(tc.total)},
                                        {"bound", real(tc.bound)}, {"bound_log", real(tc.bound_log)}});
    rep.check("asymptotic: |K(beta)| <= bound shape", integer(tc.count), real(tc.bound),
              static_cast<double>(tc.count) <= tc.bound);
    return rep;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sumsets of dense subsets of the primes: constructions and certificates"};
    app.require_subcommand(1);
    Output out;
    std::function<FinalReport()> run;

    u64 n = 100000, W = 3, b = 1, m = 30, seed = 0, N = 1000, trials = 10;
    unsigned k = 2, s = 3, t = 1, j_max = 0;
    double eps0 = 0.1, sigma = 0.005, eps = 0.1, delta = 1, p = 0.5, alpha = 0.5, beta = 0.5, c = 1;
    std::string rule = "all", spec = "units", spec2;
    std::optional<double> alpha0, opt_sigma, opt_eps0;
    bool list = false;

    auto* sieve = app.add_subcommand("sieve", "primes up to n");
    sieve->add_option("--n", n)->required();
    sieve->add_flag("--list", list, "include every prime");
    add_output(sieve, out);
    sieve->callback([&] { run = [&] { return cmd_sieve(n, list); }; });

    auto* partition = app.add_subcommand("partition", "residue classes mod the primorial of W");
    partition->add_option("--n", n)->required();
    partition->add_option("--W", W)->required();
    partition->add_option("--rule", rule, "all, residue:b0:m0 or random:delta:seed");
    add_output(partition, out);
    partition->callback([&] { run = [&] { return cmd_partition(n, W, rule, seed); }; });

    auto* spectrum = app.add_subcommand("spectrum", "Fourier data of one embedded class");
    spectrum->add_option("--n", n)->required();
    spectrum->add_option("--W", W)->required();
    spectrum->add_option("--b", b)->required();
    spectrum->add_option("--rule", rule);
    add_output(spectrum, out);
    spectrum->callback([&] { run = [&] { return cmd_spectrum(n, W, b, rule, seed); }; });

    auto* decompose = app.add_subcommand("decompose", "Bohr-set decomposition of one embedded class");
    decompose->add_option("--n", n)->required();
    decompose->add_option("--W", W)->required();
    decompose->add_option("--b", b)->required();
    decompose->add_option("--eps0", eps0)->required();
    decompose->add_option("--sigma", sigma)->required();
    decompose->add_option("--rule", rule);
    add_output(decompose, out);
    decompose->callback([&] { run = [&] { return cmd_decompose(n, W, b, eps0, sigma, rule, seed); }; });

    auto* sumset = app.add_subcommand("sumset", "B1 + B2 in Z_m");
    sumset->add_option("--m", m)->required();
    sumset->add_option("--set-spec", spec)->required();
    sumset->add_option("--set-spec2", spec2, "second summand, defaults to the first");
    add_output(sumset, out);
    sumset->callback([&] { run = [&] { return cmd_sumset(m, spec, spec2); }; });

    auto* moments = app.add_subcommand("moments", "representation moments and their stratification");
    moments->add_option("--m", m)->required();
    moments->add_option("--set-spec", spec)->required();
    moments->add_option("--k", k)->required();
    add_output(moments, out);
    moments->callback([&] { run = [&] { return cmd_moments(m, spec, k); }; });

    auto* znstar = app.add_subcommand("znstar-bound", "Hoelder certificate for B inside the units");
    znstar->add_option("--m", m)->required();
    znstar->add_option("--set-spec", spec)->required();
    znstar->add_option("--alpha0", alpha0, "consecutive-block density");
    add_output(znstar, out);
    znstar->callback([&] { run = [&] { return cmd_znstar(m, spec, alpha0); }; });

    auto* extremal = app.add_subcommand("extremal", "the product-set construction");
    extremal->add_option("--s", s)->required();
    extremal->add_option("--t", t)->required();
    add_output(extremal, out);
    extremal->callback([&] { run = [&] { return cmd_extremal(s, t); }; });

    auto* ck = app.add_subcommand("ck-series", "partial sums of C_k");
    ck->add_option("--c", c);
    ck->add_option("--k", k)->required();
    ck->add_option("--j-max", j_max, "minimum number of terms, 0 for automatic");
    add_output(ck, out);
    ck->callback([&] { run = [&] { return cmd_ck(c, k, j_max); }; });

    auto* tail = app.add_subcommand("tail-count", "exhaustive count of high-collision tuples");
    tail->add_option("--m", m)->required();
    tail->add_option("--set-spec", spec)->required();
    tail->add_option("--k", k)->required();
    tail->add_option("--beta", beta)->required();
    tail->add_option("--c", c);
    add_output(tail, out);
    tail->callback([&] { run = [&] { return cmd_tail(m, spec, k, beta, c); }; });

    auto* simulate = app.add_subcommand("simulate-random", "sumsets of dense subsets of random hosts");
    simulate->add_option("--N", N)->required();
    simulate->add_option("--p", p)->required();
    simulate->add_option("--alpha", alpha)->required();
    simulate->add_option("--beta", beta);
    simulate->add_option("--trials", trials)->required();
    simulate->add_option("--seed", seed);
    simulate->add_option("--k", k);
    add_output(simulate, out);
    simulate->callback([&] {
        run = [&] {
            experiment::RandomSetExperiment e{N, p, alpha, beta, trials, seed, k};
            return experiment::random_host_report(experiment::simulate_random_host(e));
        };
    });

    auto* pipeline = app.add_subcommand("pipeline", "the full residue-class argument on A_n");
    unsigned pipeline_k = 3;
    pipeline->add_option("--n", n)->required();
    pipeline->add_option("--W", W)->required();
    pipeline->add_option("--delta", delta)->required();
    pipeline->add_option("--eps", eps)->required();
    pipeline->add_option("--seed", seed);
    pipeline->add_option("--rule", rule, "all, residue:b0:m0, random (density delta) or random:delta:seed");
    pipeline->add_option("--sigma", opt_sigma);
    pipeline->add_option("--eps0", opt_eps0);
    pipeline->add_option("--k", pipeline_k);
    add_output(pipeline, out);
    pipeline->callback([&] {
        run = [&] {
            experiment::ExperimentConfig cfg;
            cfg.n = n;
            cfg.W = W;
            cfg.delta = delta;
            cfg.eps = eps;
            cfg.sigma = opt_sigma;
            cfg.eps0 = opt_eps0;
            cfg.k = pipeline_k;
            cfg.seed = seed;
            cfg.rule = rule_from(rule, delta, seed);
            cfg.output_format = report::parse_format(out.format);
            return experiment::run_pipeline(cfg);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const FinalReport rep = run();
        report::emit_report(rep, report::parse_format(out.format), out.out);
        if (!rep.exact_checks_pass()) {
            std::cerr << "primesum: an exact check failed\n";
            return 3;
        }
        return 0;
    } catch (const InvariantViolation& e) {
        std::cerr << "primesum: invariant violated: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "primesum: " << e.what() << "\n";
        return 2;
    }
}
