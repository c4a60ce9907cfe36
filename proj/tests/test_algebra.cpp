#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "tik/algebra.hpp"
#include "tik/errors.hpp"

using namespace tik;

static std::string fx(const std::string& name) {
    return std::string(TIK_FIXTURE_DIR) + "/" + name;
}

TEST_CASE("a2 fixture: three path classes") {
    BoundAlgebra A = parse_algebra_file(fx("a2.json"));
    CHECK(A.p == 2);
    CHECK(A.nvert() == 2);
    CHECK(A.narrow() == 1);
    CHECK(A.dim() == 3); // e1, e2, b
    CHECK(A.saturation_length == 2);
    CHECK(A.quiver.vertex_index("1") == 0);
    CHECK(A.quiver.vertex_index("2") == 1);
    // the one nontrivial path class goes 2 -> 1
    CHECK(A.basis_by_pair[1][0].size() == 1);
    CHECK(A.basis_by_pair[0][1].empty());
}

TEST_CASE("a3 fixture: six path classes, saturation at length 3") {
    BoundAlgebra A = parse_algebra_file(fx("a3.json"));
    CHECK(A.dim() == 6); // e1, e2, e3, b, a, ab
    CHECK(A.saturation_length == 3);
    CHECK(A.basis_by_pair[2][0].size() == 1); // the length-2 path 3 -> 1
}

TEST_CASE("nak fixture: the relation kills the length-2 path") {
    BoundAlgebra A = parse_algebra_file(fx("nak.json"));
    CHECK(A.dim() == 5);
    CHECK(A.saturation_length == 2);
    CHECK(A.basis_by_pair[2][0].empty());
    CHECK(A.relations.size() == 1);
}

TEST_CASE("nonnak fixture: all length-2 paths die; loop stays finite") {
    BoundAlgebra A = parse_algebra_file(fx("nonnak.json"));
    CHECK(A.dim() == 6); // e1, e2, e3, a, b, c
    CHECK(A.saturation_length == 2);
    REQUIRE(A.file_dim_bound.has_value());
    CHECK(*A.file_dim_bound == 2);
}

TEST_CASE("basis bookkeeping is consistent") {
    for (const char* name : {"a2.json", "a3.json", "nak.json", "nonnak.json"}) {
        BoundAlgebra A = parse_algebra_file(fx(name));
        std::size_t total = 0;
        for (int v = 0; v < A.nvert(); ++v)
            for (int w = 0; w < A.nvert(); ++w) {
                for (int id : A.basis_by_pair[v][w]) {
                    CHECK(A.basis[id].start == v);
                    CHECK(A.basis[id].end == w);
                }
                total += A.basis_by_pair[v][w].size();
            }
        CHECK(total == A.dim());
        // every basis path is composable and ends where it claims
        for (const auto& q : A.basis) {
            int at = q.start;
            for (int a : q.arrows) {
                CHECK(A.quiver.arrows[a].from == at);
                at = A.quiver.arrows[a].to;
            }
            CHECK(at == q.end);
        }
    }
}

TEST_CASE("field override wins over the file's field") {
    BoundAlgebra A = parse_algebra_file(fx("a2.json"), 3u);
    CHECK(A.p == 3);
    CHECK(A.dim() == 3);
}

TEST_CASE("coefficients are reduced mod p; vanishing terms drop out") {
    // over F_2 the coefficient 2 is zero, so the relation disappears
    std::string txt = R"({"field": 2,
        "vertices": ["1", "2", "3"],
        "arrows": [{"name":"b","from":"2","to":"1"},{"name":"a","from":"3","to":"2"}],
        "relations": [[{"coeff": 2, "path": ["a", "b"]}]]})";
    CHECK(parse_algebra(txt).dim() == 6);
    // over F_3 it is alive and kills the path
    CHECK(parse_algebra(txt, 3u).dim() == 5);
}

TEST_CASE("two-term relation: commuting square") {
    std::string txt = R"({"field": 3,
        "vertices": ["s", "x", "y", "t"],
        "arrows": [{"name":"f","from":"s","to":"x"},{"name":"g","from":"x","to":"t"},
                   {"name":"h","from":"s","to":"y"},{"name":"k","from":"y","to":"t"}],
        "relations": [[{"coeff": 1, "path": ["f","g"]}, {"coeff": -1, "path": ["h","k"]}]]})";
    BoundAlgebra A = parse_algebra(txt);
    CHECK(A.dim() == 9); // 4 vertices + 4 arrows + one surviving s -> t class
    CHECK(A.basis_by_pair[0][3].size() == 1);
    // the dead path expands to the surviving one with coefficient 1
    int fi = A.quiver.arrow_index("f"), gi = A.quiver.arrow_index("g");
    int hi = A.quiver.arrow_index("h"), ki = A.quiver.arrow_index("k");
    auto it = A.expand.find({0, {fi, gi}});
    REQUIRE(it != A.expand.end());
    REQUIRE(it->second.size() == 1);
    CHECK(it->second[0].first == A.basis_by_pair[0][3][0]);
    CHECK(it->second[0].second == 1);
    CHECK(A.basis[it->second[0].first].arrows == std::vector<int>{hi, ki});
}

TEST_CASE("schema violations") {
    CHECK_THROWS_AS(parse_algebra("not json"), SchemaError);
    CHECK_THROWS_AS(parse_algebra("[1,2]"), SchemaError);
    CHECK_THROWS_AS(parse_algebra(R"({"vertices":["1"]})"), SchemaError); // no field
    CHECK_THROWS_AS(parse_algebra(R"({"field":4,"vertices":["1"]})"), SchemaError);
    CHECK_THROWS_AS(parse_algebra(R"({"field":2,"vertices":["1"],"bogus":1})"), SchemaError);
    CHECK_THROWS_AS(parse_algebra(R"({"field":2,"vertices":[]})"), SchemaError);
    CHECK_THROWS_AS(parse_algebra(R"({"field":2,"vertices":["1","1"]})"), SchemaError);
    CHECK_THROWS_AS(parse_algebra(R"({"field":2,"vertices":["1"],
        "arrows":[{"name":"a","from":"1","to":"9"}]})"),
                    SchemaError);
    CHECK_THROWS_AS(parse_algebra(R"({"field":2,"vertices":["1"],
        "arrows":[{"name":"a","from":"1","to":"1"},{"name":"a","from":"1","to":"1"}]})"),
                    SchemaError);
    CHECK_THROWS_AS(parse_algebra(R"({"field":2,"vertices":["1"],"dim_bound":0})"), SchemaError);
    CHECK_THROWS_AS(parse_algebra_file("/nonexistent/nowhere.json"), SchemaError);
    // field override must still be prime
    CHECK_THROWS_AS(parse_algebra_file(fx("a2.json"), 6u), SchemaError);
}

TEST_CASE("relation validation") {
    // non-composable: b ends at vertex 1 but a starts at 3
    CHECK_THROWS_AS(parse_algebra(R"({"field":2,"vertices":["1","2","3"],
        "arrows":[{"name":"b","from":"2","to":"1"},{"name":"a","from":"3","to":"2"}],
        "relations":[[{"coeff":1,"path":["b","a"]}]]})"),
                    NonComposablePath);
    // length-1 relation term is not admissible
    CHECK_THROWS_AS(parse_algebra(R"({"field":2,"vertices":["1","2"],
        "arrows":[{"name":"b","from":"2","to":"1"}],
        "relations":[[{"coeff":1,"path":["b"]}]]})"),
                    NonAdmissible);
    // mixed lengths within one relation
    CHECK_THROWS_AS(parse_algebra(R"({"field":2,"vertices":["1"],
        "arrows":[{"name":"c","from":"1","to":"1"}],
        "relations":[[{"coeff":1,"path":["c","c"]},{"coeff":1,"path":["c","c","c"]}]]})"),
                    NonAdmissible);
    // terms with different endpoints
    CHECK_THROWS_AS(parse_algebra(R"({"field":2,"vertices":["1","2","3","4"],
        "arrows":[{"name":"p","from":"1","to":"2"},{"name":"q","from":"2","to":"3"},
                  {"name":"r","from":"2","to":"4"}],
        "relations":[[{"coeff":1,"path":["p","q"]},{"coeff":1,"path":["p","r"]}]]})"),
                    SchemaError);
    // unknown arrow name inside a relation
    CHECK_THROWS_AS(parse_algebra(R"({"field":2,"vertices":["1"],
        "arrows":[{"name":"c","from":"1","to":"1"}],
        "relations":[[{"coeff":1,"path":["z","z"]}]]})"),
                    SchemaError);
}

TEST_CASE("unbound loop fails finiteness detection") {
    CHECK_THROWS_AS(parse_algebra(R"({"field":2,"vertices":["1"],
        "arrows":[{"name":"c","from":"1","to":"1"}],"relations":[]})"),
                    NotFiniteDimensional);
}
