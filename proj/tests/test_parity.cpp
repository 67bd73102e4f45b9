#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace poly120;
using poly120::testing::has_proper_subproof;
using poly120::testing::load_fixture;
using poly120::testing::parity_oracle;

namespace {

const Polytope& P() { return Polytope::shared(); }

std::vector<RayPermutation> generators(std::initializer_list<OperatorName> names) {
    std::vector<RayPermutation> out;
    for (auto n : names) out.push_back(P().permutation(n));
    return out;
}

}  // namespace

TEST_CASE("fixture certificates verify and classify") {
    const auto full = full_system();
    const std::vector<std::tuple<const char*, const char*, std::vector<int>>> rows = {
        {"proof19.json", "38_2-19_4", {}},
        {"proof25.json", "46_2 2_4-25_4", {49, 50}},
        {"proof41.json", "80_2 1_4-41_4", {111}},
    };
    for (const auto& [file, symbol, quads] : rows) {
        CAPTURE(file);
        const auto cert = load_fixture(file);
        const auto& proof = cert.proof;
        CHECK(verify_parity(proof, full));
        CHECK(parity_oracle(P(), proof.basis_ids));
        CHECK(classify(proof).to_string() == symbol);
        CHECK(is_critical(proof, full));
        CHECK(spanned_600cells(proof).size() >= 2);
        CHECK_FALSE(within_one_600cell(proof));
        std::vector<int> at4;
        for (const auto& [ray, n] : poly120::testing::tally_rays(P(), proof.basis_ids))
            if (n == 4) at4.push_back(ray);
        CHECK(at4 == quads);
        CHECK(cert.symbol == std::optional<std::string>(symbol));
        CHECK(cert.critical == std::optional<bool>(true));
    }
}

TEST_CASE("spanned 600-cells") {
    const auto p19 = load_fixture("proof19.json").proof;
    const auto s6 = spanned_600cells(p19);
    CHECK(s6.count(Cell600::parse("A")) == 1);
    CHECK(s6.count(Cell600::parse("E'")) == 1);
    const auto p41 = load_fixture("proof41.json").proof;
    const auto s8 = spanned_600cells(p41);
    CHECK(s8.size() >= 8);
    for (const char* c : {"A", "B", "C", "A'", "B'", "C'", "D'", "E'"}) CHECK(s8.count(Cell600::parse(c)) == 1);

    const auto id = *P().find_basis({38, 20, 25, 53});
    const auto single = ParityProof::from_bases(P(), SystemRef{}, {id});
    CHECK(spanned_600cells(single) == std::set<Cell600>{Cell600::parse("A")});
}

TEST_CASE("broken proofs are rejected") {
    const auto full = full_system();
    auto ids = load_fixture("proof19.json").proof.basis_ids;
    ids.pop_back();
    const auto cut = ParityProof::from_bases(P(), SystemRef{}, ids);
    CHECK_FALSE(verify_parity(cut, full));
    CHECK_THROWS_AS(classify(cut), UnverifiedProof);
    CHECK_THROWS_AS(is_critical(cut, full), UnverifiedProof);
    REQUIRE(parity_violation(cut, full).has_value());
    CHECK(parity_violation(cut, full)->rfind("odd_basis_count", 0) == 0);

    const auto empty = ParityProof::from_bases(P(), SystemRef{}, {});
    CHECK_FALSE(verify_parity(empty, full));

    const auto one = ParityProof::from_bases(P(), SystemRef{}, {1});
    CHECK_FALSE(verify_parity(one, full));
    CHECK(parity_violation(one, full)->rfind("even_ray_multiplicity", 0) == 0);

    const auto p19 = load_fixture("proof19.json").proof;
    const auto s96 = reduced_system(poly120::testing::kDrop96);
    bool outside = false;
    for (int id : p19.basis_ids) outside = outside || !s96.contains_basis(id);
    if (outside) CHECK_THROWS_AS(verify_parity(p19, s96), std::out_of_range);
}

TEST_CASE("ray 171 does not complete the 25-basis certificate") {
    CHECK_FALSE(P().find_basis({171, 50, 298, 112}).has_value());
    CHECK(P().find_basis({177, 50, 298, 112}).has_value());
}

TEST_CASE("proof symbols") {
    const auto s = ProofSymbol::parse("46_2 2_4-25_4");
    CHECK(s.basis_count == 25);
    CHECK(s.ray_part == std::vector<std::pair<int, int>>{{46, 2}, {2, 4}});
    CHECK(s.to_string() == "46_2 2_4-25_4");
    CHECK(s.ray_part_string() == "46_2 2_4");
    CHECK_THROWS(ProofSymbol::parse("46_2 2_4"));
}

TEST_CASE("kernel membership and rank of the 19-basis certificate") {
    const auto full = full_system();
    const auto p19 = load_fixture("proof19.json").proof;
    const auto m = incidence_matrix(full);
    BitVector x(m.cols());
    for (int id : p19.basis_ids) x.set(*full.basis_position(id));
    CHECK(m.multiply(x).none());
    CHECK(proof_matrix(p19).rank() == 18);
    CHECK(proof_matrix(p19).cols() == 19);
}

TEST_CASE("criticality agrees with subset enumeration") {
    const auto full = full_system();
    for (const char* f : {"proof19.json", "proof25.json"}) {
        const auto proof = load_fixture(f).proof;
        CHECK(is_critical(proof, full) == !has_proper_subproof(P(), proof.basis_ids));
    }
}

TEST_CASE("non-critical proof from the 96-basis system") {
    const auto s = reduced_system(poly120::testing::kDrop96);
    SearchConfig c;
    c.target_bases = 21;
    c.min_bases = 21;
    c.mode = SearchMode::incremental;
    c.seed_basis = s.basis_ids().front();
    const auto r = search(s, c);
    REQUIRE_FALSE(r.proofs.empty());
    int critical = 0, loose = 0;
    for (const auto& p : r.proofs) {
        const bool crit = is_critical(p, s);
        REQUIRE(crit == !has_proper_subproof(P(), p.basis_ids));
        ++(crit ? critical : loose);
    }
    CHECK(critical > 0);
    CHECK(loose > 0);
}

TEST_CASE("orbits") {
    const auto full = full_system();
    const auto p19 = load_fixture("proof19.json").proof;

    const auto v = orbit(p19, generators({OperatorName::V}));
    CHECK(v.size() == 5);
    CHECK(std::find(v.begin(), v.end(), p19) != v.end());

    const auto none = orbit(p19, {});
    REQUIRE(none.size() == 1);
    CHECK(none[0] == p19);

    const auto uvw = orbit(p19, generators({OperatorName::U, OperatorName::V, OperatorName::W}));
    CHECK(uvw.size() > 25);
    CHECK(std::is_sorted(uvw.begin(), uvw.end()));
    for (const auto& p : uvw) {
        REQUIRE(verify_parity(p, full));
        REQUIRE(is_critical(p, full));
        REQUIRE(classify(p).to_string() == "38_2-19_4");
    }

    std::vector<int> swapped(300);
    for (int i = 0; i < 300; ++i) swapped[i] = i + 1;
    std::swap(swapped[12], swapped[16]);  // 13 <-> 17
    const std::vector<RayPermutation> bad{{"swap", swapped}};
    REQUIRE_FALSE(P().find_basis({17, 14, 15, 16}).has_value());
    CHECK_THROWS_AS(orbit(p19, bad), NotASymmetry);
}

TEST_CASE("classify accounting identity on orbit members") {
    const auto p25 = load_fixture("proof25.json").proof;
    const auto orb = orbit(p25, generators({OperatorName::V, OperatorName::W}));
    for (const auto& p : orb) {
        const auto sym = classify(p);
        int total = 0;
        for (const auto& [count, mult] : sym.ray_part) {
            CHECK(mult % 2 == 0);
            total += count * mult;
        }
        CHECK(total == 4 * sym.basis_count);
        CHECK(sym.to_string() == "46_2 2_4-25_4");
    }
}
