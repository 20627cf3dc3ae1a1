// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qserre/suites.hpp"

using namespace qserre;

namespace {

// Pinned tolerances and orders.
constexpr double kGammaTol = 1e-10;
constexpr int kMirrorOrder = 10;
constexpr int kIntegralityOrder = 15;
constexpr int kAnnihilationOrder = 10;
constexpr int kLaplaceOrder = 8;
constexpr int kDeltaOrder = 6;
constexpr int kPairingOrder = 6;
constexpr int kHodgeOrder = 6;
constexpr int kRandomSeries = 50;

struct Outcome {
    bool ok = true;
    std::vector<std::string> notes;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back("failed: " + what);
        }
    }
    void take(const Report& r) {
        if (!r.passed) {
            ok = false;
            notes.push_back("failed: " + r.name + (r.messages.empty() ? "" : " (" + r.messages.front() + ")"));
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

Outcome crit_table1() {
    Outcome o;
    const auto m = mirror_maps(4, kMirrorOrder);
    const auto t = golden::table1();
    o.require(m.N_table.size() >= t.size(), "N_d available for d = 1..8");
    for (std::size_t d = 0; d < t.size() && d < m.N_table.size(); ++d)
        o.require(m.N_table[d] == t[d], "N_" + std::to_string(d + 1) + " = " + m.N_table[d].get_str());
    return o;
}

Outcome crit_mirror_expansions() {
    Outcome o;
    const auto m = mirror_maps(4, kMirrorOrder);
    const auto eu = golden::m_eu(), loc = golden::m_loc(), fb = golden::f_bar_printed();
    for (int k = 1; k <= 5; ++k) {
        const auto i = static_cast<std::size_t>(k - 1);
        o.require(m.M_eu[k] == eu[i], "M_eu q^" + std::to_string(k));
        o.require(m.M_loc[k] == loc[i], "M_loc q^" + std::to_string(k));
        if (k != 4) o.require(m.F_bar[k] == fb[i], "F_bar q^" + std::to_string(k));
    }
    // The printed F_bar q^4 cannot coexist with the printed invariants: it would force a different N_3.
    const auto table = golden::table1();
    const auto implied = golden::f_bar_from_invariants(table, 5);
    auto with_printed = implied;
    with_printed[4] = fb[3];
    const Rational n3 = with_printed.divide_by_q().log()[3];
    o.require(n3 != table[2], "printed F_bar q^4 contradicts N_3");
    o.require(m.F_bar[4] == implied[4], "F_bar q^4 equals the value implied by the invariants");
    o.note("F_bar q^4: printed " + fb[3].get_str() + " implies N_3 = " + n3.get_str() + "; computed " + m.F_bar[4].get_str() +
           " is the value the invariant table implies");
    const auto big = mirror_maps(4, kIntegralityOrder);
    o.take(integrality_check(big));
    o.take(mirror_compatibility_check(big));
    return o;
}

Outcome crit_operator_identities() {
    Outcome o;
    const auto ops = build_quintic_ops();
    o.take(factorization_check(ops));
    o.take(intertwiner_check(ops));
    return o;
}

Outcome crit_annihilation() {
    Outcome o;
    const auto ops = build_quintic_ops();
    const int W = kAnnihilationOrder;
    o.take(annihilate_check(ops.D_eu, quintic_phi_eu(W), W));
    o.take(annihilate_check(ops.D_loc, quintic_phi_loc(W), W));
    const auto cross = annihilate_check(ops.D_eu, quintic_phi_loc(W), W);
    o.require(!cross.passed && cross.data.at("lowest_residual_degree") == 1, "cross control fails first at w^1");
    return o;
}

Outcome crit_second_structure_matrices() {
    Outcome o;
    RunConfig c;
    for (const auto& r : suite_matrices(c)) {
        o.take(r);
        if (r.data.contains("misprints"))
            for (const auto& mp : r.data["misprints"])
                o.note(r.name + mp.at("entry").get<std::string>() + ": printed " + mp.at("printed").get<std::string>() +
                       " breaks weighted homogeneity; generated " + mp.at("generated").get<std::string>());
    }
    const auto sigmas = sample_sigmas(4, 3);
    o.require(sigmas.size() == 9, "sigma sample is {+-5/2, +-3/2, +-1/2} plus 3 random");
    for (const auto& s : sigmas) o.take(flatness_check(ssc_connection(s, 4)));
    return o;
}

Outcome crit_second_metric() {
    Outcome o;
    for (const auto& s : sample_sigmas(4, 3)) o.take(second_metric_flatness(s, 4));
    o.take(second_metric_asymptotics(4));
    return o;
}

Outcome crit_delta_tower() {
    Outcome o;
    for (int k = 0; k <= 4; ++k) o.take(delta_intertwining(frac(-5, 2) + k, 4));
    for (const auto& s : sample_sigmas(4, 3)) o.take(delta_intertwining(s, 4));
    const std::size_t rk = rank(delta_total(4).num());
    o.require(rk == 4, "rank Delta_total = " + std::to_string(rk));
    o.take(delta_t0_check(4));
    o.take(delta_relation_check(extract_descendants(4, kDeltaOrder), kDeltaOrder));
    return o;
}

Outcome crit_laplace_solutions() {
    Outcome o;
    const int W = kLaplaceOrder;
    const auto dd = extract_descendants(4, W);
    const Rational hi = frac(5, 2);
    o.take(verify_ssc_solution(kcheck_columns(dd, hi, 1, W), hi, 4, W));
    o.take(verify_ssc_solution(kcheck_columns(dd, -hi, 0, W), -hi, 4, W));
    std::size_t boundary = 0;
    for (int a = 0; a <= 4; ++a)
        for (const auto& [s, ell] : std::vector<std::pair<Rational, Rational>>{{hi, 1}, {-hi, 0}}) {
            const auto r = fl_rules_check(kseries_column(dd, s, a, W), ell);
            o.take(r);
            boundary += r.data.at("boundary_terms").get<std::size_t>();
        }
    if (boundary > 0)
        o.note(std::to_string(boundary) + " boundary term(s) where d/dz^-1 K is outside the transform domain");
    return o;
}

Outcome crit_pairing() {
    Outcome o;
    const auto r = pairing_identity_check(4, kPairingOrder);
    o.take(r);
    o.require(r.data.at("rhs_q_independent") == true, "L-transformed side is q-independent");
    return o;
}

Outcome crit_gamma_hrr() {
    Outcome o;
    for (int n = 1; n <= 8; ++n) {
        o.take(gamma_todd_identity(n, kGammaTol));
        o.take(hrr_check(n, 10, kGammaTol));
    }
    o.take(selfintersection_check(0, 4));
    o.take(selfintersection_check(1, 4));
    o.take(selfintersection_check(5, 4));
    return o;
}

Outcome crit_hodge() {
    Outcome o;
    const auto loc = floc_filtration(4);
    const auto eu = feu_filtration(4, loc);
    const auto td = ttilde_data(4, eu);
    o.take(ttilde_table_check(td));
    o.require(td.q_independent, "ttilde is q-independent");
    o.take(filtration_structure_check(4, loc, eu));
    o.take(griffiths_check(loc, frac(-5, 2), 4, "loc"));
    o.take(griffiths_check(eu, frac(5, 2), 4, "eu"));
    const auto k = kcheck_ttilde(extract_descendants(4, kHodgeOrder), td.ttilde, kHodgeOrder);
    o.take(k);
    o.require(k.data.at("constant") == "24", "computed constant is 24");
    o.note("computed constant " + k.data.at("constant").get<std::string>());
    return o;
}

bool associative(const Algebra& alg) {
    for (std::size_t a = 0; a < alg.rank(); ++a)
        for (std::size_t b = 0; b < alg.rank(); ++b)
            for (std::size_t c = 0; c < alg.rank(); ++c)
                if (alg.mul(alg.mul(alg.basis(a), alg.basis(b)), alg.basis(c)) !=
                    alg.mul(alg.basis(a), alg.mul(alg.basis(b), alg.basis(c))))
                    return false;
    return true;
}

Outcome crit_properties() {
    Outcome o;
    for (int n = 1; n <= 8; ++n) o.require(associative(*projective_space(n)), "associativity on P^" + std::to_string(n));

    std::mt19937 rng(20240611u);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
    const int D = 10;
    const auto q = UniSeries::variable(D);
    int bad = 0;
    for (int i = 0; i < kRandomSeries; ++i) {
        UniSeries a(D);
        for (int k = 1; k <= D; ++k) a[k] = frac(num(rng), den(rng));
        if (sgn(a[1]) == 0) a[1] = 1;
        if (a.exp().log() != a || a.compose(a.revert()) != q || a.revert().compose(a) != q) ++bad;
    }
    o.require(bad == 0, std::to_string(bad) + " random series round-trips failed");

    const auto dd = extract_descendants(4, kLaplaceOrder);
    for (auto kind : {Twist::Euler, Twist::Local}) {
        const auto I = i_matrix(kind, dd);
        auto r = lu_check(*dd.alg, I, lu_factorize(I));
        r.name = std::string("lu_") + twist_name(kind);
        o.take(r);
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Invariant table N_1..N_8 at D = 10", crit_table1},
        {"Mirror maps through q^5, integrality through q^15", crit_mirror_expansions},
        {"Operator factorizations and intertwiner", crit_operator_identities},
        {"Annihilation of closed-form solutions to W = 10", crit_annihilation},
        {"Second structure matrices and flatness", crit_second_structure_matrices},
        {"Second metric flatness and large-radius values", crit_second_metric},
        {"Delta tower", crit_delta_tower},
        {"Laplace transform solutions to W = 8", crit_laplace_solutions},
        {"Pairing identity to q^6", crit_pairing},
        {"Gamma class and Riemann-Roch", crit_gamma_hrr},
        {"Hodge filtrations and Kcheck(ttilde)", crit_hodge},
        {"Property suites", crit_properties},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.ok = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.ok) ++failures;
        std::ostringstream line;
        line.precision(2);
        line << std::fixed << (o.ok ? "PASS " : "FAIL ") << i + 1 << ". " << criteria[i].first << " (" << secs << " s)";
        std::cout << line.str() << "\n";
        for (const auto& n : o.notes) std::cout << "     " << n << "\n";
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
    return failures == 0 ? 0 : 1;
}
