#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "hdad/csv.hpp"
#include "hdad/dataset.hpp"
#include "hdad/encode.hpp"
#include "hdad/parallel.hpp"
#include "hdad/rng.hpp"
#include "hdad/scores.hpp"

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

}  // namespace

TEST_CASE("csv round-trips quoted fields, commas, and newlines") {
  hdad::CsvTable t;
  t.header = {"a", "b"};
  t.rows = {{"plain", "with,comma"}, {"with \"quotes\"", "line\nbreak"}};
  std::string path = temp_path("hdad_csv_roundtrip.csv");
  hdad::write_csv(t, path);
  hdad::CsvTable back = hdad::read_csv(path);
  CHECK(back.header == t.header);
  REQUIRE(back.rows.size() == 2);
  CHECK(back.rows[0] == t.rows[0]);
  CHECK(back.rows[1] == t.rows[1]);
  std::filesystem::remove(path);
}

TEST_CASE("csv accepts CRLF line endings") {
  std::string path = temp_path("hdad_csv_crlf.csv");
  write_file(path, "x,y\r\n1,2\r\n3,4\r\n");
  hdad::CsvTable t = hdad::read_csv(path);
  CHECK(t.header == std::vector<std::string>{"x", "y"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1] == std::vector<std::string>{"3", "4"});
  std::filesystem::remove(path);
}

TEST_CASE("csv reports the ragged data row by number") {
  std::string path = temp_path("hdad_csv_ragged.csv");
  write_file(path, "x,y\n1,2\n3\n");
  CHECK_THROWS_WITH_AS(hdad::read_csv(path), doctest::Contains("row 2"), hdad::Error);
  std::filesystem::remove(path);
}

TEST_CASE("csv column_index finds columns and rejects unknown names") {
  hdad::CsvTable t;
  t.header = {"id", "score"};
  CHECK(t.column_index("score") == 1);
  CHECK(t.has_column("id"));
  CHECK_FALSE(t.has_column("nope"));
  CHECK_THROWS_AS((void)t.column_index("nope"), hdad::Error);
}

TEST_CASE("dataset construction validates shape") {
  hdad::Column x{"x", hdad::ColumnKind::Numeric, {1.0, 2.0}, {}};
  hdad::Column c{"c", hdad::ColumnKind::Categorical, {}, {"a", "b"}};

  hdad::Dataset ds({x, c});
  CHECK(ds.n_cases() == 2);
  CHECK(ds.has_column("x"));
  CHECK_FALSE(ds.has_labels());
  CHECK(ds.numeric_column_indices() == std::vector<std::size_t>{0});
  CHECK(ds.categorical_column_indices() == std::vector<std::size_t>{1});

  SUBCASE("duplicate column names rejected") {
    CHECK_THROWS_AS(hdad::Dataset({x, x}), hdad::Error);
  }
  SUBCASE("length mismatch rejected") {
    hdad::Column bad{"y", hdad::ColumnKind::Numeric, {1.0}, {}};
    CHECK_THROWS_AS(hdad::Dataset({x, bad}), hdad::Error);
  }
  SUBCASE("non-finite numeric rejected") {
    hdad::Column bad{"y", hdad::ColumnKind::Numeric, {1.0, std::nan("")}, {}};
    CHECK_THROWS_AS(hdad::Dataset({x, bad}), hdad::Error);
  }
  SUBCASE("label length must match") {
    CHECK_THROWS_AS(hdad::Dataset({x}, std::vector<bool>{true}), hdad::Error);
  }
  SUBCASE("empty dataset rejected") {
    hdad::Column empty{"x", hdad::ColumnKind::Numeric, {}, {}};
    CHECK_THROWS_AS(hdad::Dataset({empty}), hdad::Error);
  }
}

TEST_CASE("dataset load applies schema and parses labels") {
  std::string path = temp_path("hdad_load.csv");
  write_file(path, "x,color,hda\n1.5,red,0\n2.5,blue,1\n3.5,red,false\n");
  hdad::Schema schema{{"x", hdad::ColumnKind::Numeric},
                      {"color", hdad::ColumnKind::Categorical}};
  hdad::Dataset ds = hdad::load_dataset(path, schema, std::string("hda"));
  CHECK(ds.n_cases() == 3);
  CHECK(ds.columns().size() == 2);  // label column excluded from features
  CHECK(ds.column("x").numeric[1] == doctest::Approx(2.5));
  CHECK(ds.column("color").classes[1] == "blue");
  REQUIRE(ds.has_labels());
  CHECK(ds.labels() == std::vector<bool>{false, true, false});

  SUBCASE("numeric parse failure names the column") {
    write_file(path, "x,color,hda\nabc,red,0\n");
    CHECK_THROWS_WITH_AS(hdad::load_dataset(path, schema, std::string("hda")),
                         doctest::Contains("x"), hdad::Error);
  }
  SUBCASE("bad label value rejected") {
    write_file(path, "x,color,hda\n1.0,red,maybe\n");
    CHECK_THROWS_AS(hdad::load_dataset(path, schema, std::string("hda")), hdad::Error);
  }
  std::filesystem::remove(path);
}

TEST_CASE("schema inference marks a column numeric iff all values parse") {
  std::string path = temp_path("hdad_infer.csv");
  write_file(path, "a,b,c\n1,x,2.5\n2,3,4e1\n");
  hdad::Schema s = hdad::infer_schema(path);
  CHECK(s.at("a") == hdad::ColumnKind::Numeric);
  CHECK(s.at("b") == hdad::ColumnKind::Categorical);  // "x" fails to parse
  CHECK(s.at("c") == hdad::ColumnKind::Numeric);
  std::filesystem::remove(path);
}

TEST_CASE("dataset csv writer round-trips through the loader") {
  hdad::Column x{"x", hdad::ColumnKind::Numeric, {1.25, -3.5, 0.0}, {}};
  hdad::Column c{"tag", hdad::ColumnKind::Categorical, {}, {"p", "q", "p"}};
  hdad::Dataset ds({x, c}, std::vector<bool>{false, false, true});
  std::string path = temp_path("hdad_write.csv");
  hdad::write_dataset_csv(ds, path);
  hdad::Dataset back =
      hdad::load_dataset(path, hdad::infer_schema(path), std::string("hda"));
  CHECK(back.n_cases() == 3);
  CHECK(back.column("x").numeric[0] == doctest::Approx(1.25));
  CHECK(back.column("tag").classes == std::vector<std::string>{"p", "q", "p"});
  CHECK(back.labels() == std::vector<bool>{false, false, true});
  std::filesystem::remove(path);
}

TEST_CASE("continuous view selects exactly the numeric columns") {
  hdad::Column x{"x", hdad::ColumnKind::Numeric, {1.0, 2.0}, {}};
  hdad::Column c{"c", hdad::ColumnKind::Categorical, {}, {"a", "b"}};
  hdad::Column y{"y", hdad::ColumnKind::Numeric, {5.0, 6.0}, {}};
  hdad::Dataset ds({x, c, y});
  hdad::ContinuousView v = hdad::continuous_view(ds);
  CHECK(v.n_columns() == 2);
  hdad::Dataset numeric = v.as_dataset();
  CHECK(numeric.columns().size() == 2);
  CHECK(numeric.column("y").numeric[1] == doctest::Approx(6.0));

  hdad::Dataset cat_only({c});
  CHECK_THROWS_AS(hdad::continuous_view(cat_only), hdad::Error);
}

TEST_CASE("encode min-max scales numerics and expands categoricals") {
  hdad::Column x{"x", hdad::ColumnKind::Numeric, {0.0, 5.0, 10.0}, {}};
  hdad::Column k{"k", hdad::ColumnKind::Numeric, {7.0, 7.0, 7.0}, {}};
  hdad::Column c{"c", hdad::ColumnKind::Categorical, {}, {"b", "a", "b"}};
  hdad::Dataset ds({x, k, c});

  SUBCASE("numeric-only") {
    hdad::EncodedMatrix m = hdad::encode(ds, false);
    CHECK(m.n_cols() == 2);
    CHECK(m.at(0, 0) == 0.0);
    CHECK(m.at(1, 0) == doctest::Approx(0.5));
    CHECK(m.at(2, 0) == 1.0);
    // constant column collapses to zero everywhere
    CHECK(m.at(0, 1) == 0.0);
    CHECK(m.at(2, 1) == 0.0);
  }
  SUBCASE("categoricals become one dummy per class, classes sorted") {
    hdad::EncodedMatrix m = hdad::encode(ds, true);
    CHECK(m.n_cols() == 4);  // x, k, c=a, c=b
    CHECK(m.column_info()[2].source_column == "c");
    CHECK(*m.column_info()[2].class_label == "a");
    CHECK(*m.column_info()[3].class_label == "b");
    CHECK(m.at(0, 2) == 0.0);  // case 1 is class b
    CHECK(m.at(0, 3) == 1.0);
    CHECK(m.at(1, 2) == 1.0);  // case 2 is class a
    CHECK(m.at(1, 3) == 0.0);
    // distinct classes differ by exactly one unit in each of two dummies
    CHECK(hdad::squared_distance(m, 0, 1) == doctest::Approx(0.25 + 1.0 + 1.0));
  }
}

TEST_CASE("score vectors are canonical: lowest value flags the anomaly") {
  hdad::ScoreVector s = hdad::canonical_from_raw({1.0, 5.0, 2.0});
  CHECK(s[0] == -1.0);
  CHECK(s[1] == -5.0);  // highest raw (most anomalous) becomes the minimum
  CHECK(s.min() == -5.0);
  CHECK(s.max() == -1.0);
  CHECK(s.mean() == doctest::Approx(-8.0 / 3.0));
  CHECK(s.at_id(2) == -5.0);
  CHECK(hdad::rank_of(s, 2) == 1);
  CHECK(hdad::rank_of(s, 1) == 3);
}

TEST_CASE("score vector validation") {
  CHECK_THROWS_AS(hdad::ScoreVector(std::vector<double>{}), hdad::Error);
  CHECK_THROWS_AS(hdad::ScoreVector({1.0, std::nan("")}), hdad::Error);
  hdad::ScoreVector s({1.0, 2.0});
  CHECK_THROWS_AS((void)s.at_id(0), hdad::Error);
  CHECK_THROWS_AS((void)s.at_id(3), hdad::Error);
}

TEST_CASE("rank ties break by ascending case id") {
  hdad::ScoreVector s({2.0, 1.0, 2.0, 1.0});
  CHECK(hdad::rank_of(s, 2) == 1);
  CHECK(hdad::rank_of(s, 4) == 2);
  CHECK(hdad::rank_of(s, 1) == 3);
  CHECK(hdad::rank_of(s, 3) == 4);
  CHECK(hdad::order_ascending({2.0, 1.0, 2.0, 1.0}) ==
        std::vector<std::size_t>{1, 3, 0, 2});
}

TEST_CASE("random source is deterministic and well ranged") {
  hdad::Rng a(42), b(42), c(43);
  bool all_equal = true;
  bool any_diff_seed = false;
  for (int i = 0; i < 1000; ++i) {
    double va = a.uniform();
    double vb = b.uniform();
    double vc = c.uniform();
    if (va != vb) all_equal = false;
    if (va != vc) any_diff_seed = true;
    CHECK(va >= 0.0);
    CHECK(va < 1.0);
  }
  CHECK(all_equal);
  CHECK(any_diff_seed);

  hdad::Rng d(7);
  double acc = 0.0;
  for (int i = 0; i < 20000; ++i) {
    double z = d.normal();
    REQUIRE(std::isfinite(z));
    acc += z;
  }
  CHECK(std::abs(acc / 20000.0) < 0.05);  // sample mean near zero

  hdad::Rng e(9);
  for (int i = 0; i < 1000; ++i) {
    auto v = e.below(7);
    CHECK(v < 7);
  }
}

TEST_CASE("parallel loop fills every slot exactly like a sequential loop") {
  for (std::size_t n : {0ul, 1ul, 3ul, 1000ul}) {
    std::vector<std::size_t> out(n, 0);
    hdad::parallel_for(n, [&](std::size_t i) { out[i] = i * i + 1; });
    for (std::size_t i = 0; i < n; ++i) REQUIRE(out[i] == i * i + 1);
  }
}
