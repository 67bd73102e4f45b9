#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace poly120;

namespace {

const Polytope& P() { return Polytope::shared(); }

GoldenNumber g(long p, long q, unsigned long d = 1) { return GoldenNumber::from_ints(p, q, d); }

bool in_600cell(const Cell600& cell, int ray) {
    const auto m = cell_membership(ray);
    return cell.primed ? m.primed == cell : m.unprimed == cell;
}

}  // namespace

TEST_CASE("operator powers and periods") {
    const auto I = identity4();
    for (auto name : {OperatorName::U, OperatorName::V, OperatorName::W, OperatorName::X, OperatorName::Y}) {
        const auto op = make_operator(name);
        CAPTURE(to_char(name));
        CHECK(is_orthogonal(op.matrix));
        CHECK(power(op.matrix, op.period) == I);
        for (unsigned k = 1; k < op.period; ++k) CHECK(power(op.matrix, k) != I);
    }
    CHECK(make_operator(OperatorName::U).period == 3);
    CHECK(make_operator(OperatorName::V).period == 5);
    CHECK(make_operator(OperatorName::X).period == 5);
}

TEST_CASE("tabulated V and Y have fifth power minus identity") {
    for (auto name : {OperatorName::V, OperatorName::Y}) {
        const auto printed = transcribed_matrix(name);
        std::array<GoldenVector4, 4> minus_i;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) minus_i[i][j] = GoldenNumber(i == j ? -1 : 0);
        CHECK(power(printed, 5) == minus_i);
        const auto op = make_operator(name);
        CHECK(op.negated);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(op.matrix[i][j] == -printed[i][j]);
    }
    CHECK(transcribed_matrix(OperatorName::V)[0][0] == g(0, 1, 2));
    CHECK_FALSE(make_operator(OperatorName::U).negated);
    CHECK_FALSE(make_operator(OperatorName::W).negated);
    CHECK_FALSE(make_operator(OperatorName::X).negated);
    CHECK(parse_operator_name("W") == OperatorName::W);
    CHECK_THROWS_AS(parse_operator_name("Z"), std::invalid_argument);
}

TEST_CASE("ray construction") {
    const auto& rays = P().rays();
    REQUIRE(rays.size() == 300);
    CHECK(P().ray(1).vector == GoldenVector4{1, 0, 0, 0});
    CHECK(P().ray(2).vector == GoldenVector4{0, 1, 0, 0});
    CHECK(P().ray(4).vector == GoldenVector4{0, 0, 0, 1});
    CHECK(P().ray(5).vector == GoldenVector4{g(1, 0, 2), g(1, 0, 2), g(1, 0, 2), g(1, 0, 2)});
    // V e1 = (τ/2, 0, 1/2, -1/(2τ)) with 1/τ = τ - 1; W e1 = ((τ-1)/2, τ/2, 0, -1/2)
    CHECK(P().ray(13).vector == GoldenVector4{g(0, 1, 2), 0, g(1, 0, 2), g(1, -1, 2)});
    CHECK(P().ray(61).vector == GoldenVector4{g(-1, 1, 2), g(0, 1, 2), 0, g(-1, 0, 2)});

    for (const auto& r : rays) {
        CHECK(inner_product(r.vector, r.vector) == GoldenNumber(1));
        const auto first = std::find_if(r.vector.begin(), r.vector.end(), [](const auto& x) { return !x.is_zero(); });
        REQUIRE(first != r.vector.end());
        CHECK(first->sign() == 1);
        const int idx = r.index;
        CHECK(r.unprimed_cell.letter == (idx + 59) / 60 - 1);
        CHECK(r.primed_cell.letter == ((idx - 1) % 60) / 12);
    }
    for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t j = i + 1; j < rays.size(); ++j) {
            CHECK(rays[i].vector != rays[j].vector);
            CHECK(rays[i].vector != negate(rays[j].vector));
        }
}

TEST_CASE("rays follow the generator word") {
    const auto U = make_operator(OperatorName::U).matrix;
    const auto V = make_operator(OperatorName::V).matrix;
    const auto W = make_operator(OperatorName::W).matrix;
    for (int n = 0; n < 5; ++n)
        for (int m = 0; m < 5; ++m)
            for (int l = 0; l < 3; ++l)
                for (int i = 1; i <= 4; ++i) {
                    GoldenVector4 e{};
                    e[i - 1] = GoldenNumber(1);
                    const auto v = power(W, n) * (power(V, m) * (power(U, l) * e));
                    CHECK(canonicalize(v) == P().ray(60 * n + 12 * m + 4 * l + i).vector);
                }
}

TEST_CASE("canonicalize") {
    CHECK(canonicalize({-1, 0, 0, 0}) == GoldenVector4{1, 0, 0, 0});
    CHECK(canonicalize({0, g(-1, 1), -1, 0}) == GoldenVector4{0, g(-1, 1), -1, 0});
    CHECK(canonicalize({0, g(1, -1), 1, 0}) == GoldenVector4{0, g(-1, 1), -1, 0});
    CHECK_THROWS_AS(canonicalize({0, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("orthogonality graph degrees") {
    for (int i = 1; i <= 300; ++i) {
        const auto& nb = P().orthogonal_rays(i);
        CHECK(nb.size() == 27);
        int count = 0;
        for (int j = 1; j <= 300; ++j)
            if (j != i && inner_product(P().ray(i).vector, P().ray(j).vector).is_zero()) ++count;
        CHECK(count == 27);
    }
}

TEST_CASE("basis enumeration") {
    const auto& bases = P().bases();
    REQUIRE(bases.size() == 675);
    std::vector<int> per_ray(301, 0);
    for (std::size_t k = 0; k < bases.size(); ++k) {
        const auto& b = bases[k];
        CHECK(b.id == static_cast<int>(k) + 1);
        CHECK(std::is_sorted(b.rays.begin(), b.rays.end()));
        CHECK(std::adjacent_find(b.rays.begin(), b.rays.end()) == b.rays.end());
        if (k > 0) CHECK(bases[k - 1].rays < b.rays);
        GoldenMatrix4 m;
        for (int i = 0; i < 4; ++i) m[i] = P().ray(b.rays[i]).vector;
        CHECK(is_orthogonal(m));
        for (int r : b.rays) ++per_ray[r];
    }
    CHECK(std::all_of(per_ray.begin() + 1, per_ray.end(), [](int n) { return n == 9; }));
    CHECK(P().find_basis({1, 2, 3, 4}) == 1);
    CHECK(P().find_basis({52, 15, 48, 34}).has_value());
    CHECK_FALSE(P().find_basis({1, 2, 3, 5}).has_value());
}

TEST_CASE("block table bases carry 24-cell tags") {
    const auto expected = poly120::testing::block_table_bases();
    std::set<std::array<int, 4>> tagged;
    for (const auto& b : P().bases()) {
        if (b.tag.cell24) {
            tagged.insert(b.rays);
            CHECK(*b.tag.cell24 == cell_membership(b.rays[0]).cell24);
            CHECK(b.tag.cells().size() == 2);
        } else {
            CHECK(b.tag.cells().size() == 1);
        }
    }
    CHECK(tagged == expected);
}

TEST_CASE("600-cell basis tables") {
    const auto& tables = P().cell_tables();
    REQUIRE(tables.size() == 10);
    std::size_t assignments = 0;
    std::set<int> distinct;
    for (const auto& [cell, ids] : tables) {
        CAPTURE(cell.to_string());
        CHECK(ids.size() == 75);
        assignments += ids.size();
        distinct.insert(ids.begin(), ids.end());
        for (int id : ids)
            for (int r : P().basis(id).rays) CHECK(in_600cell(cell, r));
    }
    CHECK(assignments == 750);
    CHECK(distinct.size() == 675);
    CHECK(assignments - distinct.size() == 75);

    const auto contains = [&](const char* cell, std::array<int, 4> rays) {
        const auto id = P().find_basis(rays);
        if (!id) return false;
        const auto& ids = tables.at(Cell600::parse(cell));
        return std::binary_search(ids.begin(), ids.end(), *id);
    };
    CHECK(contains("A", {38, 20, 25, 53}));
    CHECK(contains("A", {52, 15, 48, 34}));
    CHECK(contains("A'", {127, 242, 186, 64}));
    CHECK_FALSE(contains("B", {38, 20, 25, 53}));
}

TEST_CASE("cell labels") {
    auto m = cell_membership(1);
    CHECK(m.unprimed.to_string() == "A");
    CHECK(m.primed.to_string() == "A'");
    CHECK(m.cell24.to_string() == "A'A");
    m = cell_membership(73);
    CHECK(m.cell24.to_string() == "B'B");
    m = cell_membership(300);
    CHECK(m.unprimed.to_string() == "E");
    CHECK(m.primed.to_string() == "E'");
    CHECK(m.cell24.to_string() == "E'E");
    CHECK_THROWS_AS(cell_membership(0), std::out_of_range);
    CHECK_THROWS_AS(cell_membership(301), std::out_of_range);

    CHECK(Cell24::parse("C'B") == Cell24{2, 1});
    CHECK(Cell24::parse("BC'") == Cell24{2, 1});
    CHECK_THROWS_AS(Cell24::parse("CB"), std::invalid_argument);
    CHECK_THROWS_AS(Cell24::parse("F'A"), std::invalid_argument);
    const auto rays = Cell24::parse("B'C").rays();
    CHECK(rays.front() == 133);
    CHECK(rays.back() == 144);
}

TEST_CASE("the two 600-cell partitions meet in 24-cells") {
    std::map<std::pair<int, int>, int> blocks;
    for (const auto& r : P().rays()) ++blocks[{r.unprimed_cell.letter, r.primed_cell.letter}];
    CHECK(blocks.size() == 25);
    for (const auto& [key, n] : blocks) CHECK(n == 12);
}

TEST_CASE("V shifts 24-cells within a column, W shifts columns") {
    const auto& V = P().permutation(OperatorName::V);
    const auto& W = P().permutation(OperatorName::W);
    CHECK(V.is_bijection());
    CHECK(W.is_bijection());
    for (int i = 1; i <= 300; ++i) {
        const int off = (i - 1) % 60;
        CHECK(V(i) == (off < 48 ? i + 12 : i - 48));
        CHECK(W(i) == (i - 1 + 60) % 300 + 1);
    }
    CHECK(V(1) == 13);
    CHECK(V(49) == 1);
    CHECK(W(1) == 61);
    CHECK(W(240) == 300);
    CHECK(W(241) == 1);
    CHECK(W(300) == 60);
}

TEST_CASE("U permutation") {
    const auto& U = P().permutation(OperatorName::U);
    CHECK(U.is_bijection());
    CHECK(U(1) == 5);
    CHECK(U(5) == 9);
    CHECK(U(9) == 1);
    const auto cube = U.after(U).after(U);
    for (int i = 1; i <= 300; ++i) CHECK(cube(i) == i);
}

TEST_CASE("permutations carry each ray to plus or minus its image") {
    for (auto name : {OperatorName::U, OperatorName::V, OperatorName::W}) {
        const auto op = make_operator(name);
        const auto& perm = P().permutation(name);
        for (int i = 1; i <= 300; ++i) {
            const auto img = op.matrix * P().ray(i).vector;
            const auto& target = P().ray(perm(i)).vector;
            CHECK((img == target || img == negate(target)));
        }
    }
}

TEST_CASE("symmetries map bases to bases") {
    for (auto name : {OperatorName::U, OperatorName::V, OperatorName::W}) {
        const auto& perm = P().permutation(name);
        for (const auto& b : P().bases()) {
            std::array<int, 4> img;
            for (int k = 0; k < 4; ++k) img[k] = perm(b.rays[k]);
            CHECK(P().find_basis(img).has_value());
        }
    }
}

TEST_CASE("X and Y act on one 600-cell only") {
    const auto X = make_operator(OperatorName::X);
    const auto Y = make_operator(OperatorName::Y);
    const auto& rays = P().rays();
    const auto a = Cell600::parse("A");
    const auto ap = Cell600::parse("A'");

    int x_fail = 0, y_fail = 0;
    for (int i = 1; i <= 300; ++i) {
        const auto xi = ray_image(X, rays, i);
        const auto yi = ray_image(Y, rays, i);
        if (in_600cell(a, i)) {
            REQUIRE(xi.has_value());
            CHECK(in_600cell(a, *xi));
        } else if (!xi) {
            ++x_fail;
        }
        if (in_600cell(ap, i)) {
            REQUIRE(yi.has_value());
            CHECK(in_600cell(ap, *yi));
        } else if (!yi) {
            ++y_fail;
        }
    }
    CHECK(x_fail > 0);
    CHECK(y_fail > 0);
    CHECK_THROWS_AS(ray_permutation(X, rays), NotASymmetry);
    CHECK_THROWS_AS(ray_permutation(Y, rays), NotASymmetry);
    CHECK_THROWS_AS(P().permutation(OperatorName::X), NotASymmetry);
}

TEST_CASE("X and Y cycle the 600-cell tables") {
    const auto X = make_operator(OperatorName::X);
    const auto Y = make_operator(OperatorName::Y);
    const auto& rays = P().rays();
    for (auto [op, cell] : {std::pair{&X, "A"}, std::pair{&Y, "A'"}}) {
        for (int id : P().cell_tables().at(Cell600::parse(cell))) {
            std::array<int, 4> img;
            for (int k = 0; k < 4; ++k) img[k] = *ray_image(*op, rays, P().basis(id).rays[k]);
            CHECK(P().find_basis(img).has_value());
        }
    }
}
