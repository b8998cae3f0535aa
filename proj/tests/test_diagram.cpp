#include "ncp/diagram.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace ncp;

TEST_CASE("type parsing and normalization", "[diagram]") {
    CHECK(parse_type("A2").render() == "A2");
    CHECK(parse_type("I2(3)").render() == "A2");
    CHECK(parse_type("I2(4)").render() == "B2");
    CHECK(parse_type("D3").render() == "A3");
    CHECK(parse_type("I2(7)").render() == "I2(7)");
    CHECK(parse_type("b3xa1").render() == "A1xB3");
    CHECK(parse_type("A1*B3").render() == "A1xB3");
    CHECK(parse_type("B3xA1").rank() == 4);
    CHECK(parse_type("B3xA1").factors.size() == 2);
    CHECK(parse_type("B3xA1") == parse_type("A1xB3"));
    CHECK(parse_type("").rank() == 0);
    CHECK(parse_type("e").factors.empty());

    CHECK_THROWS_AS(parse_type("D2"), parse_error);
    CHECK_THROWS_AS(parse_type("I2(2)"), parse_error);
    CHECK_THROWS_AS(parse_type("E5"), parse_error);
    CHECK_THROWS_AS(parse_type("F3"), parse_error);
    CHECK_THROWS_AS(parse_type("H5"), parse_error);
    CHECK_THROWS_AS(parse_type("Q3"), parse_error);
    CHECK_THROWS_AS(parse_type("A0"), parse_error);
    CHECK_THROWS_AS(parse_type("I2"), parse_error);
}

TEST_CASE("round trip through render", "[diagram]") {
    for (const char* d : {"A1", "A5", "B2", "B6", "D4", "D7", "E6", "E7", "E8", "F4", "H3", "H4",
                          "I2(5)", "I2(12)", "A2xA1", "A2xA2xB3", "I2(7)xA1"}) {
        CoxeterType t = parse_type(d);
        CHECK(parse_type(t.render()) == t);
    }
}

TEST_CASE("coxeter matrices", "[diagram]") {
    auto a2 = coxeter_matrix(parse_type("A2"));
    CHECK(a2.m == std::vector<std::vector<int>>{{1, 3}, {3, 1}});
    auto i7 = coxeter_matrix(parse_type("I2(7)"));
    CHECK(i7.m == std::vector<std::vector<int>>{{1, 7}, {7, 1}});

    auto b3 = coxeter_matrix(parse_type("B3"));
    int fours = 0, threes = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            fours += b3.m[i][j] == 4;
            threes += b3.m[i][j] == 3;
        }
    CHECK(fours == 1);
    CHECK(threes == 1);
    CHECK(b3.m[1][2] == 4);  // the 4-edge is last

    // symmetry, unit diagonal, block structure of a product
    auto prod = coxeter_matrix(parse_type("A2xB2"));
    for (int i = 0; i < 4; ++i) {
        CHECK(prod.m[i][i] == 1);
        for (int j = 0; j < 4; ++j) CHECK(prod.m[i][j] == prod.m[j][i]);
    }
    CHECK(prod.m[0][2] == 2);
    CHECK(prod.m[1][3] == 2);
}

TEST_CASE("vertex deletion classifies parabolic types", "[diagram]") {
    CHECK(delete_vertex(parse_type("A3"), 1).type.render() == "A1xA1");
    CHECK(delete_vertex(parse_type("A3"), 0).type.render() == "A2");

    // H3 has the 5-edge on vertices (0,1): parabolics are A2, A1xA1, I2(5)
    CHECK(delete_vertex(parse_type("H3"), 0).type.render() == "A2");
    CHECK(delete_vertex(parse_type("H3"), 1).type.render() == "A1xA1");
    CHECK(delete_vertex(parse_type("H3"), 2).type.render() == "I2(5)");

    std::multiset<std::string> b3;
    for (int v = 0; v < 3; ++v) b3.insert(delete_vertex(parse_type("B3"), v).type.render());
    CHECK(b3 == std::multiset<std::string>{"A1xA1", "A2", "B2"});

    CHECK(delete_vertex(parse_type("D4"), 1).type.render() == "A1xA1xA1");
    CHECK(delete_vertex(parse_type("E6"), 1).type.render() == "A5");
    CHECK(delete_vertex(parse_type("E6"), 3).type.render() == "A1xA2xA2");
    CHECK(delete_vertex(parse_type("E7"), 0).type.render() == "D6");
    CHECK(delete_vertex(parse_type("E8"), 7).type.render() == "E7");
    CHECK(delete_vertex(parse_type("F4"), 0).type.render() == "B3");
    CHECK(delete_vertex(parse_type("F4"), 1).type.render() == "A1xA2");
    CHECK(delete_vertex(parse_type("H4"), 3).type.render() == "H3");
    CHECK(delete_vertex(parse_type("H4"), 2).type.render() == "A1xI2(5)");

    // deleting from a product deletes within one factor
    CHECK(delete_vertex(parse_type("A2xA1"), 2).type.render() == "A1xA1");

    CHECK_THROWS_AS(delete_vertex(parse_type("A3"), 3), error);
    CHECK_THROWS_AS(delete_vertex(parse_type("A3"), -1), error);
}

TEST_CASE("deletion rank sums and vertex maps", "[diagram]") {
    for (const char* d : {"A1", "A4", "A7", "B2", "B5", "D4", "D6", "E6", "E7", "E8", "F4", "H3",
                          "H4", "I2(9)", "A2xB3"}) {
        CoxeterType t = parse_type(d);
        CoxeterMatrix cm = coxeter_matrix(t);
        for (int v = 0; v < t.rank(); ++v) {
            VertexDeletion del = delete_vertex(t, v);
            REQUIRE(del.type.rank() == t.rank() - 1);
            REQUIRE(static_cast<int>(del.orig_vertex.size()) == t.rank() - 1);
            // the vertex map is a diagram isomorphism onto its image
            CoxeterMatrix sub = coxeter_matrix(del.type);
            for (int a = 0; a < sub.n; ++a)
                for (int b = 0; b < sub.n; ++b)
                    REQUIRE(sub.m[a][b] == cm.m[del.orig_vertex[a]][del.orig_vertex[b]]);
        }
    }
}

TEST_CASE("bipartition is a proper two-coloring", "[diagram]") {
    Bipartition a3 = bipartition(parse_type("A3"));
    CHECK(a3.minus == std::vector<int>{0, 2});
    CHECK(a3.plus == std::vector<int>{1});
    CHECK(bipartition(parse_type("A1")).minus == std::vector<int>{0});
    CHECK(bipartition(parse_type("A1")).plus.empty());
    CHECK(bipartition(parse_type("I2(6)")).minus == std::vector<int>{0});
    CHECK(bipartition(parse_type("I2(6)")).plus == std::vector<int>{1});

    for (const char* d : {"A6", "B5", "D6", "E6", "E7", "E8", "F4", "H4", "A2xA2"}) {
        CoxeterType t = parse_type(d);
        Bipartition b = bipartition(t);
        CoxeterMatrix cm = coxeter_matrix(t);
        REQUIRE(b.minus.size() + b.plus.size() == static_cast<std::size_t>(t.rank()));
        for (int u : b.minus)
            for (int v : b.minus) REQUIRE(cm.m[u][v] <= 2);
        for (int u : b.plus)
            for (int v : b.plus) REQUIRE(cm.m[u][v] <= 2);
    }
}

TEST_CASE("invariant tables", "[diagram]") {
    GroupInvariants h3 = invariants(parse_type("H3"));
    CHECK(h3.h() == 10);
    CHECK(h3.exponents == std::vector<int>{1, 5, 9});
    CHECK(h3.order == 120);

    for (int m = 3; m <= 12; ++m) {
        GroupInvariants i2 = invariants(parse_type("I2(" + std::to_string(m) + ")"));
        CHECK(i2.h() == m);
        CHECK(i2.exponents == std::vector<int>{1, m - 1});
        CHECK(i2.order == 2 * m);
    }

    GroupInvariants a2 = invariants(parse_type("A2"));
    CHECK(a2.h() == 3);
    CHECK(a2.exponents == std::vector<int>{1, 2});
    CHECK(a2.order == 6);

    CHECK_THROWS_AS(invariants(parse_type("A1xA1")).h(), error);
    CHECK(invariants(parse_type("A2xB3")).h_by_vertex == std::vector<int>{3, 3, 6, 6, 6});
    CHECK(invariants(parse_type("e")).order == 1);
}

TEST_CASE("exponent identities across the classification", "[diagram]") {
    std::vector<std::string> types;
    for (int n = 1; n <= 8; ++n) types.push_back("A" + std::to_string(n));
    for (int n = 2; n <= 8; ++n) types.push_back("B" + std::to_string(n));
    for (int n = 4; n <= 8; ++n) types.push_back("D" + std::to_string(n));
    for (int m = 3; m <= 12; ++m) types.push_back("I2(" + std::to_string(m) + ")");
    for (const char* d : {"E6", "E7", "E8", "F4", "H3", "H4"}) types.push_back(d);

    for (const auto& d : types) {
        CoxeterType t = parse_type(d);
        GroupInvariants inv = invariants(t);
        const int n = inv.rank;
        const int h = inv.h();
        Int prod = 1;
        long long sum = 0;
        for (int e : inv.exponents) {
            prod *= e + 1;
            sum += e;
        }
        INFO(d);
        CHECK(prod == inv.order);
        CHECK(2 * sum == static_cast<long long>(n) * h);
        CHECK(inv.exponents.back() == h - 1);
        CHECK(2 * inv.reflection_count == Int(n) * h);
    }
}
