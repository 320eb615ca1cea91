#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fcalc/cli.hpp"
#include "fcalc/corpus.hpp"
#include "fcalc/serialize.hpp"

using namespace fcalc;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return "fcalc_test_" + name + ".json"; }

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("degree verb") {
  auto r = run({"degree", "--strong", "corpus:zgeq(4)", "--N", "10"});
  CHECK(r.code == 0);
  CHECK(r.out == "strong degree = 4, window [0,5]\n");
  r = run({"degree", "--weak", "--margin", "1", "corpus:atomic_sum(3)", "--N", "8"});
  CHECK(r.out.find("weak degree = -inf") == 0);
  r = run({"degree", "--strong", "--weak", "corpus:const"});
  CHECK(r.code == 2);
  r = run({"degree", "corpus:zgeq_sum", "--N", "5"});
  CHECK(r.code == 0);
  CHECK(r.out == "strong degree = not certified\n");
}

TEST_CASE("margin from the environment") {
  setenv("FCALC_MARGIN", "1", 1);
  auto r = run({"degree", "--weak", "corpus:augmentation_kernel", "--N", "6"});
  CHECK(r.out.find("margin 1") != std::string::npos);
  setenv("FCALC_MARGIN", "x", 1);
  CHECK(run({"degree", "--weak", "corpus:augmentation_kernel", "--N", "6"}).code == 2);
  unsetenv("FCALC_MARGIN");
  CHECK(default_margin() == 2);
}

TEST_CASE("verify names the broken braid relation") {
  // level 3 carries a swap and a sign change, which do not satisfy the braid relation
  const std::string text = R"({"coeff": "Q", "N": "3",
    "levels": [{"gens": "0", "rels": []}, {"gens": "0", "rels": []}, {"gens": "0", "rels": []}, {"gens": "2", "rels": []}],
    "incl": [[], [], []],
    "sym": [[], [], [[]], [[["0","1"],["1","0"]], [["1","0"],["0","-1"]]]]})";
  const std::string path = temp_path("braid");
  write_file(path, text);
  auto r = run({"verify", path});
  CHECK(r.code == 2);
  CHECK(r.err.find("level 3") != std::string::npos);
  CHECK(r.err.find("s_1") != std::string::npos);
  CHECK(r.err.find("braid") != std::string::npos);
}

TEST_CASE("input errors exit with 2") {
  const std::string path = temp_path("malformed");
  write_file(path, "{\"coeff\": \"Z\", \"N\": ");
  auto r = run({"verify", path});
  CHECK(r.code == 2);
  CHECK(r.err.find("byte") != std::string::npos);
  CHECK(run({"verify", "no_such_file.json"}).code == 2);
  CHECK(run({"dims", "corpus:P(1)", "--coeff", "R"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("JSON round trips") {
  for (const std::string name : {"augmentation_kernel", "ex_upm_F", "free_sharp(1)", "atomic(1)"}) {
    const std::string path = temp_path("emit");
    auto r = run({"corpus", "emit", name, "--coeff", "F3", "--N", "4", "--out", path});
    REQUIRE(r.code == 0);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    Json j = parse_json(ss.str());
    auto obj = build(name, Coeff::prime_field(3), 4);
    if (obj.sharp) CHECK(sharp_from_json(j) == *obj.sharp);
    else CHECK(fi_from_json(j) == *obj.fi);
    CHECK(to_json(fi_from_json(j)).dump() == to_json(obj.as_fi()).dump());
    CHECK(run({"verify", path}).code == 0);
  }
  // module-level and scalar forms
  PresentedModule m(Coeff::rationals(), 2, Mat::from_rows({{Scalar(1, 2), Scalar(-3)}}));
  CHECK(module_from_json(to_json(m)) == m);
  CHECK(to_json(m)["rels"][0][0] == "1/2");
}

TEST_CASE("cross effects through files") {
  const std::string reps = temp_path("reps"), rebuilt = temp_path("rebuilt");
  auto r = run({"dk-decompose", "corpus:free_sharp(2)", "--coeff", "Q", "--N", "4", "--out", reps});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("2  2  0 2") != std::string::npos);
  r = run({"dk-reconstruct", reps, "--N", "4", "--out", rebuilt});
  REQUIRE(r.code == 0);
  r = run({"dims", rebuilt, "--json"});
  Json j = parse_json(r.out);
  CHECK(j["profiles"][3]["rank"] == "13");
  CHECK(run({"dk-reconstruct", reps}).code == 2);
  CHECK(run({"dk-decompose", "corpus:P(1)"}).code == 2);
}

TEST_CASE("other verbs") {
  auto r = run({"tilde-hom", "--cat", "theta", "2", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("7 classes") != std::string::npos);
  r = run({"tilde-hom", "--cat", "sigma", "3", "1", "--json"});
  CHECK(parse_json(r.out)["classes"].size() == 3);
  CHECK(run({"tilde-hom", "--cat", "groups", "1", "1"}).code == 2);
  r = run({"six-term", "corpus:P(2)", "--coeff", "F2", "--N", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("NOT") == std::string::npos);
  r = run({"alpha", "corpus:ex_upm_A", "--coeff", "F2", "--N", "8"});
  CHECK(r.code == 0);
  CHECK(r.out.find("4  2  11") != std::string::npos);
  r = run({"alpha", "corpus:ex_upm_A", "--coeff", "F2", "--N", "2"});
  CHECK(r.code == 0);
  r = run({"diff", "corpus:P(2)", "--N", "5", "--json"});
  CHECK(fi_from_json(parse_json(r.out)).N() == 4);
  r = run({"shift", "corpus:P(1)", "--x", "2", "--N", "5"});
  CHECK(r.out.find("3  5") != std::string::npos);
  r = run({"kappa", "corpus:atomic(2)", "--N", "5"});
  CHECK(r.out.find("2  1") != std::string::npos);
  CHECK(run({"corpus", "list"}).out.find("zgeq(n)") != std::string::npos);
  r = run({"corpus", "check", "zgeq(2)", "P(1)", "--N", "6"});
  CHECK(r.code == 0);
  CHECK(r.out.find("all passed") != std::string::npos);
}
