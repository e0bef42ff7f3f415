#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "epsball/dataset.hpp"
#include "epsball/errors.hpp"
#include "epsball/io.hpp"

using namespace epsball;

namespace {

std::string data_path(const std::string& name) {
    return std::string(EPSBALL_TEST_DATA_DIR) + "/" + name;
}

dataset load_iris() { return load_dataset_file(data_path("iris.csv")); }

dataset from_csv(const std::string& text, const label_selector& sel = label_selector::last()) {
    std::istringstream in(text);
    return load_csv(in, sel);
}

} // namespace

TEST_CASE("single data row loads as a one-point single-class dataset") {
    const dataset ds = from_csv("0,0,A\n");
    CHECK(ds.dim() == 2);
    CHECK(ds.size() == 1);
    CHECK(ds.classes().size() == 1);
    CHECK(ds.single_class());
    CHECK(ds[0].coords == std::vector<double>{0.0, 0.0});
    CHECK(ds[0].class_id == "A");
}

TEST_CASE("identical coordinates with different labels are rejected with both rows") {
    CHECK_THROWS_WITH_AS(from_csv("0,0,A\n0,0,B\n"),
                         doctest::Contains("contradictory labels at rows 1,2"),
                         validation_error);
    // same label is legitimate duplication
    CHECK_NOTHROW(from_csv("0,0,A\n0,0,A\n1,1,B\n"));
}

TEST_CASE("malformed csv inputs are rejected") {
    CHECK_THROWS_AS(from_csv(""), validation_error);
    CHECK_THROWS_AS(from_csv("1,2,A\n3,B\n"), validation_error);      // ragged row
    CHECK_THROWS_AS(from_csv("1,2,A\n3,oops,B\n"), validation_error); // non-numeric feature
    CHECK_THROWS_AS(from_csv("1,2,A\n3,,B\n"), validation_error);     // empty feature
    CHECK_THROWS_AS(from_csv("x,y,label\n"), validation_error);       // header only
}

TEST_CASE("iris loads with the expected shape") {
    const dataset ds = load_iris();
    CHECK(ds.dim() == 4);
    CHECK(ds.size() == 150);
    CHECK(ds.classes().size() == 3);
    CHECK(ds.has_class("setosa"));
    CHECK(ds.has_class("versicolor"));
    CHECK(ds.has_class("virginica"));
    CHECK_FALSE(ds.single_class());
}

TEST_CASE("header detection and label selection variants") {
    // no header: all non-label fields numeric
    CHECK(from_csv("1,2,A\n3,4,B\n").size() == 2);
    // header detected from non-numeric feature names
    const dataset h = from_csv("f1,f2,label\n1,2,A\n3,4,B\n");
    CHECK(h.size() == 2);
    CHECK(h.dim() == 2);
    // label by name
    const dataset byname = from_csv("cls,f1,f2\nA,1,2\nB,3,4\n", label_selector::by_name("cls"));
    CHECK(byname.size() == 2);
    CHECK(byname[0].class_id == "A");
    CHECK(byname[0].coords == std::vector<double>{1.0, 2.0});
    CHECK_THROWS_AS(from_csv("f1,f2,label\n1,2,A\n", label_selector::by_name("nope")),
                    validation_error);
    // label by 0-based index, headerless
    const dataset byidx = from_csv("A,1,2\nB,3,4\n", label_selector::by_index(0));
    CHECK(byidx[1].class_id == "B");
    CHECK(byidx[1].coords == std::vector<double>{3.0, 4.0});
    CHECK_THROWS_AS(from_csv("1,2,A\n", label_selector::by_index(9)), validation_error);
    // selector parsing: digits mean index, anything else a name
    CHECK(label_selector::parse("2").index == std::size_t{2});
    CHECK(label_selector::parse("species").name == std::string("species"));
    CHECK_FALSE(label_selector::parse("").index.has_value());
    CHECK_FALSE(label_selector::parse("").name.has_value());
}

TEST_CASE("json ingest") {
    std::istringstream in(R"([{"x":[0,0],"class":"A"},{"x":[1,0.5],"class":"B"}])");
    const dataset ds = load_json(in);
    CHECK(ds.size() == 2);
    CHECK(ds.dim() == 2);
    CHECK(ds[1].coords == std::vector<double>{1.0, 0.5});
    CHECK(ds[1].class_id == "B");

    std::istringstream bad("[{\"x\":[1,2]}]");
    CHECK_THROWS_AS(load_json(bad), validation_error);
    std::istringstream malformed("not json");
    CHECK_THROWS_AS(load_json(malformed), validation_error);
}

TEST_CASE("non-finite coordinates are rejected") {
    CHECK_THROWS_AS(from_csv("1,inf,A\n2,3,B\n"), validation_error);
    CHECK_THROWS_AS(from_csv("1,nan,A\n2,3,B\n"), validation_error);
}

TEST_CASE("distance closed forms") {
    CHECK(distance({0, 0}, {3, 4}) == 5.0);
    CHECK(distance({1.5, -2.0}, {1.5, -2.0}) == 0.0);
    CHECK(distance({1, 1, 1, 1}, {2, 2, 2, 2}) == 2.0);
    CHECK_THROWS_AS(distance({1, 2}, {1, 2, 3}), validation_error);
}

TEST_CASE("distance satisfies the metric axioms on random triples") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    std::uniform_int_distribution<int> dims(1, 6);
    for (int t = 0; t < 1000; ++t) {
        const int d = dims(rng);
        std::vector<double> a(d), b(d), c(d);
        for (int k = 0; k < d; ++k) {
            a[k] = coord(rng);
            b[k] = coord(rng);
            c[k] = coord(rng);
        }
        const double ab = distance(a, b), ba = distance(b, a);
        const double ac = distance(a, c), cb = distance(c, b);
        CHECK(ab >= 0.0);
        CHECK(ab == ba);
        CHECK(distance(a, a) == 0.0);
        CHECK(ab <= ac + cb + 1e-9);
    }
}

TEST_CASE("cross_class_pairs enumerates each unordered cross pair once") {
    CHECK(cross_class_pairs(from_csv("0,0,A\n1,1,B\n")).size() == 1);
    CHECK(cross_class_pairs(from_csv("0,0,A\n1,1,A\n2,2,A\n")).empty());
    CHECK(cross_class_pairs(load_iris()).size() == 7500);
}

TEST_CASE("cross_class_pairs count matches the class-size products") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> n_dist(2, 60);
    std::uniform_int_distribution<int> k_dist(1, 4);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    for (int t = 0; t < 25; ++t) {
        const int n = n_dist(rng);
        const int k = k_dist(rng);
        std::vector<labeled_point> pts;
        for (int i = 0; i < n; ++i)
            pts.push_back({{coord(rng), coord(rng)}, "c" + std::to_string(i % k)});
        const dataset ds = dataset::from_points(pts);

        std::size_t expected = 0;
        for (std::size_t a = 0; a < ds.classes().size(); ++a)
            for (std::size_t b = a + 1; b < ds.classes().size(); ++b) {
                std::size_t na = 0, nb = 0;
                for (const auto& p : ds.points()) {
                    if (p.class_id == ds.classes()[a]) ++na;
                    if (p.class_id == ds.classes()[b]) ++nb;
                }
                expected += na * nb;
            }

        const auto pairs = cross_class_pairs(ds);
        CHECK(pairs.size() == expected);
        std::set<std::pair<std::size_t, std::size_t>> uniq(pairs.begin(), pairs.end());
        CHECK(uniq.size() == pairs.size());
        for (const auto& [i, j] : pairs) {
            CHECK(i < j);
            CHECK(ds[i].class_id != ds[j].class_id);
        }
    }
}

TEST_CASE("save then load round-trips exactly") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    std::vector<labeled_point> pts;
    for (int i = 0; i < 40; ++i)
        pts.push_back({{coord(rng), coord(rng), coord(rng)}, i % 2 ? "pos" : "neg"});
    const dataset ds = dataset::from_points(pts);

    const auto tmp = std::filesystem::temp_directory_path() / "epsball_roundtrip.csv";
    save_csv(ds, tmp.string());
    const dataset back = load_dataset_file(tmp.string());
    std::filesystem::remove(tmp);

    REQUIRE(back.size() == ds.size());
    CHECK(back.dim() == ds.dim());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        CHECK(back[i].coords == ds[i].coords); // bitwise, thanks to %.17g
        CHECK(back[i].class_id == ds[i].class_id);
    }
}

TEST_CASE("missing file raises an io error with the path") {
    CHECK_THROWS_WITH_AS(load_dataset_file("/no/such/file.csv"),
                         doctest::Contains("/no/such/file.csv"), io_error);
}

TEST_CASE("normalize_features z-scores each column") {
    const dataset ds = from_csv("0,5,A\n2,5,B\n4,5,A\n6,5,B\n");
    const dataset z = normalize_features(ds);
    REQUIRE(z.size() == 4);
    // column 0: mean 3, population sd sqrt(5)
    const double sd = std::sqrt(5.0);
    CHECK(z[0].coords[0] == doctest::Approx(-3.0 / sd).epsilon(1e-15));
    CHECK(z[3].coords[0] == doctest::Approx(3.0 / sd).epsilon(1e-15));
    // zero-variance column is centered, not scaled
    for (std::size_t i = 0; i < 4; ++i) CHECK(z[i].coords[1] == 0.0);
    // labels and order survive
    CHECK(z[1].class_id == "B");
}
