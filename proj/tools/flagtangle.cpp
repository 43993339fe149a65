// Command-line front end: parse tangle-word files, run computations and
// verification suites, emit text or JSON.
//
// Exit codes: 0 success, 1 verification failure, 2 parse/grading error.

#include <CLI11.hpp>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "flagtangle/json_io.hpp"

using namespace flagtangle;

namespace {

unsigned thread_cap() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FLAGTANGLE_THREADS")) {
        long v = std::atol(env);
        if (v >= 1 && static_cast<unsigned>(v) < hw) hw = static_cast<unsigned>(v);
    }
    return hw;
}

// index-parallel loop; callers collect results per index for deterministic output
template <typename F>
void parallel_for(size_t n, F&& fn) {
    unsigned nt = static_cast<unsigned>(std::min<size_t>(thread_cap(), n));
    if (nt <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (size_t i; (i = next.fetch_add(1)) < n;) fn(i);
        });
    for (auto& th : pool) th.join();
}

TangleWord load_word(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GradingError("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_tangle(ss.str());
}

int fail_parse(const std::string& msg, bool asJson) {
    if (asJson)
        std::cerr << json{{"error", "parse"}, {"message", msg}}.dump() << "\n";
    else
        std::cerr << "error: " << msg << "\n";
    return 2;
}

void merge(CheckReport& into, const CheckReport& part) {
    into.instances += part.instances;
    for (const auto& f : part.failures) into.failures.push_back(part.check + ": " + f);
}

// ---- verification suites ----

CheckReport suite_moves(long q, int lo, int hi) {
    CheckReport rep;
    rep.check = "moves";
    std::vector<MoveInstance> insts;
    for (int n = lo; n <= hi; ++n) {
        for (auto& mi : move_instances(MoveKind::R1, {n})) insts.push_back(mi);
        for (auto& mi : move_instances(MoveKind::S2, {n})) insts.push_back(mi);
        for (auto& mi : move_instances(MoveKind::S3, {n})) insts.push_back(mi);
        for (int m = lo; m <= hi; ++m) {
            for (auto& mi : move_instances(MoveKind::R2, {m, n})) insts.push_back(mi);
            for (auto& mi : move_instances(MoveKind::S1, {m, n})) insts.push_back(mi);
            for (int k = lo; k <= hi; ++k)
                for (auto& mi : move_instances(MoveKind::R3, {k, n, m})) insts.push_back(mi);
        }
    }
    std::vector<std::string> fails(insts.size());
    parallel_for(insts.size(), [&](size_t i) {
        const MoveInstance& mi = insts[i];
        // ν symbolically, both sides bent over the common left boundary
        SkeinVector lhs, rhs;
        for (const auto& [c, w] : mi.lhs)
            for (const auto& [r, s] : nu(bend(w)).terms) lhs.add_term(r, s * c);
        for (const auto& [c, w] : mi.rhs)
            for (const auto& [r, s] : nu(bend(w)).terms) rhs.add_term(r, s * c);
        if (lhs.terms != rhs.terms) {
            fails[i] = mi.name + ": nu mismatch";
            return;
        }
        // Φ at q
        HMorphism phiL, phiR;
        bool haveL = false, haveR = false;
        for (const auto& [c, w] : mi.lhs) {
            HMorphism m = phi_word_general(w, q) * c.eval(q);
            phiL = haveL ? phiL + m : m;
            haveL = true;
        }
        for (const auto& [c, w] : mi.rhs) {
            HMorphism m = phi_word_general(w, q) * c.eval(q);
            phiR = haveR ? phiR + m : m;
            haveR = true;
        }
        if (!haveR && haveL) phiR = HMorphism(phiL.src, phiL.dst, q);
        if (phiL != phiR) fails[i] = mi.name + ": phi mismatch";
    });
    rep.instances = static_cast<int>(insts.size());
    for (auto& f : fails)
        if (!f.empty()) rep.failures.push_back(f);
    return rep;
}

CheckReport suite_beta(long /*q*/, int lo, int hi) {
    CheckReport rep;
    rep.check = "beta";
    std::vector<GradedOrderedSet> cases;
    for (int d1 = lo; d1 <= hi; ++d1) {
        cases.push_back(GradedOrderedSet({d1}));
        for (int d2 = lo; d2 <= hi; ++d2) {
            cases.push_back(GradedOrderedSet({d1, d2}));
            for (int d3 = lo; d3 <= hi; ++d3) cases.push_back(GradedOrderedSet({d1, d2, d3}));
        }
    }
    std::vector<std::string> fails(cases.size());
    parallel_for(cases.size(), [&](size_t i) {
        if (nu(beta_word(cases[i])) != beta_rulings_formula(cases[i]))
            fails[i] = "beta mismatch on " + gos_str(cases[i]);
    });
    rep.instances = static_cast<int>(cases.size());
    for (auto& f : fails)
        if (!f.empty()) rep.failures.push_back(f);
    return rep;
}

CheckReport suite_aut(long q, int lo, int hi) {
    CheckReport rep;
    rep.check = "aut";
    const FieldSpec& f = FieldSpec::get(static_cast<int>(q));
    int width = std::min(hi - lo, 3);
    std::vector<GradedOrderedSet> xs;
    for (int n = 1; n <= 4; ++n) {
        std::vector<int> degs(n, 0);
        for (;;) {
            xs.push_back(GradedOrderedSet(degs));
            int i = 0;
            for (; i < n; ++i) {
                if (++degs[i] <= width) break;
                degs[i] = 0;
            }
            if (i == n) break;
        }
    }
    std::vector<std::string> fails(xs.size());
    parallel_for(xs.size(), [&](size_t i) {
        const GradedOrderedSet& x = xs[i];
        BigInt group = 1;
        for (int t = 0; t < x.size(); ++t) group *= (q - 1);
        for (int t = 0; t < m_statistic(x); ++t) group *= q;
        for (const auto& r : enumerate_partial_rulings(x)) {
            auto d = ruling_differential(x, r, f);
            BigInt brute = 0;
            for (const auto& a : enumerate_flag_automorphisms(x, f))
                if (a * d.diff == d.diff * a) ++brute;
            if (brute != aut_count_at(x, r, q)) {
                fails[i] = "aut_count mismatch on " + gos_str(x);
                return;
            }
            if (orbit_size_at(x, r, q) * brute != group) {
                fails[i] = "orbit-stabilizer mismatch on " + gos_str(x);
                return;
            }
        }
    });
    for (const auto& x : xs) rep.instances += static_cast<int>(enumerate_partial_rulings(x).size());
    for (auto& f2 : fails)
        if (!f2.empty()) rep.failures.push_back(f2);
    return rep;
}

CheckReport suite_category(long q, unsigned seed) {
    CheckReport rep;
    rep.check = "category";
    std::mt19937 rng(seed);
    auto randGos = [&](int maxSize) {
        int n = std::uniform_int_distribution<int>(0, maxSize)(rng);
        std::vector<int> d(n);
        for (int& v : d) v = std::uniform_int_distribution<int>(-1, 1)(rng);
        return GradedOrderedSet(d);
    };
    auto randMor = [&](const GradedOrderedSet& s, const GradedOrderedSet& d) -> HMorphism {
        auto rulings = enumerate_rulings(cone_base(s, d));
        HMorphism m(s, d, q);
        const auto& r = rulings[std::uniform_int_distribution<size_t>(0, rulings.size() - 1)(rng)];
        m.add_term(MorphismKey{r}, ExactRational(1 + std::uniform_int_distribution<int>(0, 3)(rng)));
        return m;
    };
    int done = 0;
    while (done < 60) {
        GradedOrderedSet a = randGos(2), b = randGos(2), c = randGos(2), d = randGos(2);
        if (enumerate_rulings(cone_base(a, b)).empty() || enumerate_rulings(cone_base(b, c)).empty() ||
            enumerate_rulings(cone_base(c, d)).empty())
            continue;
        HMorphism f = randMor(a, b), g = randMor(b, c), h = randMor(c, d);
        ++rep.instances;
        if (compose(compose(h, g), f) != compose(h, compose(g, f)))
            rep.failures.push_back("associativity failure");
        if (compose(identity(b, q), f) != f || compose(f, identity(a, q)) != f)
            rep.failures.push_back("unit failure");
        GradedOrderedSet x = randGos(2), y = randGos(2), z = randGos(2);
        if (!enumerate_rulings(cone_base(x, y)).empty() &&
            !enumerate_rulings(cone_base(y, z)).empty()) {
            HMorphism gamma = randMor(x, y), delta = randMor(y, z);
            if (compose(tensor_full(g, delta), tensor_full(f, gamma)) !=
                tensor_full(compose(g, f), compose(delta, gamma)))
                rep.failures.push_back("exchange failure");
        }
        ++done;
    }
    return rep;
}

CheckReport suite_dualities(long q, unsigned seed) {
    CheckReport rep;
    rep.check = "dualities";
    std::mt19937 rng(seed);
    int done = 0;
    while (done < 40) {
        // small grading-valid word grown from a random left boundary
        TangleWord w;
        int n = std::uniform_int_distribution<int>(0, 2)(rng);
        for (int i = 0; i < n; ++i)
            w.left.degrees.push_back(std::uniform_int_distribution<int>(-1, 1)(rng));
        std::vector<int> degs = w.left.degrees;
        int len = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int i = 0; i < len; ++i) {
            int k = static_cast<int>(degs.size());
            std::vector<Slice> options;
            for (int p = 1; p <= k + 1; ++p)
                for (int dg = -1; dg <= 0; ++dg) options.push_back(Slice::birth(dg, p));
            for (int p = 1; p < k; ++p) {
                options.push_back(Slice::crossing(p));
                if (degs[p - 1] == degs[p] + 1) options.push_back(Slice::death(p));
            }
            Slice s = options[std::uniform_int_distribution<size_t>(0, options.size() - 1)(rng)];
            w.slices.push_back(s);
            int p = s.pos - 1;
            if (s.kind == SliceKind::Birth)
                degs.insert(degs.begin() + p, {s.degree + 1, s.degree});
            else if (s.kind == SliceKind::Death)
                degs.erase(degs.begin() + p, degs.begin() + p + 2);
            else
                std::swap(degs[p], degs[p + 1]);
        }
        if (degs.size() > 4) continue;
        ++done;
        ++rep.instances;
        CheckReport r = duality_compat(w, q);
        for (auto& fmsg : r.failures) rep.failures.push_back(fmsg);
        if (dual_v(dual_v(w)) != w || dual_h(dual_h(w)) != w)
            rep.failures.push_back("involution failure on " + format_word(w));
        if (dual_h(dual_v(w)) != dual_v(dual_h(w)))
            rep.failures.push_back("commutation failure on " + format_word(w));
    }
    return rep;
}

int run_suites(const std::string& which, long q, int lo, int hi, unsigned seed, bool asJson) {
    std::vector<CheckReport> reports;
    if (which == "moves" || which == "all") reports.push_back(suite_moves(q, lo, hi));
    if (which == "category" || which == "all") reports.push_back(suite_category(q, seed));
    if (which == "dualities" || which == "all") reports.push_back(suite_dualities(q, seed));
    if (which == "beta" || which == "all") reports.push_back(suite_beta(q, lo, hi));
    if (which == "aut" || which == "all") reports.push_back(suite_aut(q, lo, hi));
    if (reports.empty()) {
        std::cerr << "unknown suite: " << which << "\n";
        return 2;
    }
    bool ok = true;
    for (const auto& rep : reports) {
        ok = ok && rep.ok();
        if (asJson) {
            std::cout << to_json(rep).dump() << "\n";
        } else {
            std::cout << rep.check << ": " << (rep.ok() ? "PASS" : "FAIL") << " (" << rep.instances
                      << " instances)\n";
            for (const auto& fmsg : rep.failures) std::cout << "  " << fmsg << "\n";
        }
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flagtangle: Legendrian tangle skein and flagged chain complex calculator"};
    app.require_subcommand(1);

    std::string file;
    long q = 2;
    bool asJson = false;
    int rank = 1;
    bool withOracle = false;
    std::string suite = "all";
    std::string degRange = "-2..2";
    unsigned seed = 1;

    auto* grade = app.add_subcommand("grade", "check the grading of a tangle word, print boundaries");
    grade->add_option("file", file)->required();
    grade->add_flag("--json", asJson);

    auto* rulings = app.add_subcommand("rulings", "list normal rulings with symbolic weights");
    rulings->add_option("file", file)->required();
    rulings->add_flag("--json", asJson);

    auto* nuCmd = app.add_subcommand("nu", "the weighted ruling invariant of a one-sided word");
    nuCmd->add_option("file", file)->required();
    nuCmd->add_flag("--json", asJson);

    auto* phiCmd = app.add_subcommand("phi", "the flagged-complex image of a word at prime power q");
    phiCmd->add_option("file", file)->required();
    phiCmd->add_option("--q", q)->required();
    phiCmd->add_flag("--json", asJson);

    auto* compareCmd = app.add_subcommand("compare", "check nu against phi at prime power q");
    compareCmd->add_option("file", file)->required();
    compareCmd->add_option("--q", q)->required();
    compareCmd->add_flag("--json", asJson);

    auto* heckeCmd = app.add_subcommand("hecke", "verify the Hecke relations on rank+1 strands");
    heckeCmd->add_option("--rank", rank)->required();
    heckeCmd->add_option("--q", q)->required();
    heckeCmd->add_flag("--oracle", withOracle, "also run the flag-operator oracle");
    heckeCmd->add_flag("--json", asJson);

    auto* verifyCmd = app.add_subcommand("verify", "run property suites");
    verifyCmd->add_option("--suite", suite, "moves|category|dualities|beta|aut|all");
    verifyCmd->add_option("--q", q);
    verifyCmd->add_option("--deg-range", degRange, "a..b degree window");
    verifyCmd->add_option("--seed", seed);
    verifyCmd->add_flag("--json", asJson);

    CLI11_PARSE(app, argc, argv);

    try {
        if (grade->parsed()) {
            TangleWord w = load_word(file);
            GradingResult gr = check_grading(w);
            if (asJson)
                std::cout << json{{"left", to_json(w.left)}, {"right", to_json(gr.right())}}.dump()
                          << "\n";
            else
                std::cout << "left: " << gos_str(w.left) << "\nright: " << gos_str(gr.right())
                          << "\n";
            return 0;
        }
        if (rulings->parsed()) {
            TangleWord w = load_word(file);
            auto terms = enumerate_tangle_rulings(w);
            if (asJson) {
                json arr = json::array();
                for (const auto& t : terms)
                    arr.push_back(json{{"ruling", to_json(t.boundary)}, {"weight", to_json(t.weight)}});
                std::cout << arr.dump() << "\n";
            } else {
                for (const auto& t : terms)
                    std::cout << ruling_str(t.boundary) << "  weight " << t.weight.str() << "\n";
                if (terms.empty()) std::cout << "no rulings\n";
            }
            return 0;
        }
        if (nuCmd->parsed()) {
            TangleWord w = load_word(file);
            SkeinVector v = nu(w);
            if (asJson)
                std::cout << to_json(v).dump() << "\n";
            else
                std::cout << skein_vector_str(v);
            return 0;
        }
        if (phiCmd->parsed()) {
            TangleWord w = load_word(file);
            HMorphism m = phi_word(w, q);
            if (asJson)
                std::cout << to_json(m).dump() << "\n";
            else
                std::cout << hmorphism_str(m);
            return 0;
        }
        if (compareCmd->parsed()) {
            TangleWord w = load_word(file);
            CheckReport rep = compare_nu_phi(w, q);
            if (asJson)
                std::cout << to_json(rep).dump() << "\n";
            else
                std::cout << rep.check << ": " << (rep.ok() ? "PASS" : "FAIL") << "\n";
            return rep.ok() ? 0 : 1;
        }
        if (heckeCmd->parsed()) {
            CheckReport rep = hecke_verify(rank, q);
            if (withOracle) merge(rep, flag_oracle_verify(rank, q));
            if (asJson)
                std::cout << to_json(rep).dump() << "\n";
            else {
                std::cout << rep.check << ": " << (rep.ok() ? "PASS" : "FAIL") << " ("
                          << rep.instances << " relations)\n";
                for (const auto& fmsg : rep.failures) std::cout << "  " << fmsg << "\n";
            }
            return rep.ok() ? 0 : 1;
        }
        if (verifyCmd->parsed()) {
            size_t dots = degRange.find("..");
            if (dots == std::string::npos) {
                std::cerr << "bad --deg-range, expected a..b\n";
                return 2;
            }
            int lo = std::stoi(degRange.substr(0, dots));
            int hi = std::stoi(degRange.substr(dots + 2));
            return run_suites(suite, q, lo, hi, seed, asJson);
        }
    } catch (const GradingError& e) {
        return fail_parse(e.what(), asJson);
    } catch (const std::exception& e) {
        if (asJson)
            std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
        else
            std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
