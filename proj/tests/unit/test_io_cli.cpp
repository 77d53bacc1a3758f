#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "lforge/errors.hpp"
#include "lforge/io.hpp"

using namespace lforge;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = LFORGE_FIXTURE_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run lforge_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return (kFixtures / name).string(); }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(FileFormat, CanonicalPrintIsFixedPoint) {
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(kFixtures)) {
    const auto name = entry.path().filename().string();
    if (name.starts_with("malformed") || name.starts_with("undeclared")) continue;
    const auto text = read_text_file(entry.path());
    if (detect_file_kind(text) == FileKind::Structure) {
      const auto once = print_structure(parse_structure(text));
      EXPECT_EQ(print_structure(parse_structure(once)), once) << name;
    } else {
      const auto once = print_tower(parse_tower(text));
      EXPECT_EQ(print_tower(parse_tower(once)), once) << name;
    }
    ++seen;
  }
  EXPECT_GE(seen, 30);
}

TEST(FileFormat, ErrorsCarryPositions) {
  try {
    parse_structure(read_text_file(fx("malformed_polynomial.json")));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_TRUE(contains(e.what(), "line 7, column 14")) << e.what();
  }
  EXPECT_THROW(parse_structure(read_text_file(fx("malformed_json.json"))), ParseError);
  EXPECT_THROW(parse_structure(read_text_file(fx("undeclared_generator.json"))), Error);
  EXPECT_THROW(parse_structure("{\"format\": \"lforge-structure/9\"}"), Error);
}

TEST(Cli, CertifyExitCodes) {
  auto ok = lforge_run({"certify", fx("chebyshev.json")});
  EXPECT_EQ(ok.code, cli::kSuccess);
  EXPECT_TRUE(ok.out.starts_with("certify: CERTIFIED"));
  EXPECT_TRUE(contains(ok.out, "lambda^5(v) = 5*v"));

  auto bad = lforge_run({"certify", fx("psi2_frobenius_fail.json")});
  EXPECT_EQ(bad.code, cli::kMathFailure);
  EXPECT_TRUE(contains(bad.out, "frobenius(2)"));

  auto malformed = lforge_run({"certify", fx("malformed_polynomial.json")});
  EXPECT_EQ(malformed.code, cli::kInputError);
  EXPECT_TRUE(contains(malformed.err, "line 7, column 14"));

  EXPECT_EQ(lforge_run({"certify", fx("does_not_exist.json")}).code, cli::kInputError);
  EXPECT_EQ(lforge_run({"frobnicate"}).code, cli::kInputError);
  EXPECT_EQ(lforge_run({"--help"}).code, cli::kSuccess);
}

TEST(Cli, Invariants) {
  auto r = lforge_run({"invariants", fx("chebyshev.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.starts_with("a=1 (mod 24); (X/2)=+1 (X/3)=+1 (X/5)=+1 (X/7)=+1"));
  auto m = lforge_run({"invariants", fx("construct_pm.json")});
  EXPECT_TRUE(contains(m.out, "(X/5)=-1"));
  auto ko = lforge_run({"invariants", fx("ko_a7.json")});
  EXPECT_TRUE(contains(ko.out, "a mod 24 = 7"));
}

TEST(Cli, Distinguish) {
  auto d = lforge_run({"distinguish", fx("construct_pp.json"), fx("construct_pm.json")});
  EXPECT_EQ(d.code, 0);
  EXPECT_TRUE(d.out.starts_with("DISTINCT")) << d.out;
  auto i = lforge_run({"distinguish", fx("construct_pp.json"), fx("construct_pp_conj.json")});
  EXPECT_TRUE(i.out.starts_with("ISOMORPHIC (witness: v -> ")) << i.out;
  auto ko = lforge_run({"distinguish", fx("ko_a1.json"), fx("ko_a7.json")});
  EXPECT_TRUE(ko.out.starts_with("DISTINCT")) << ko.out;
  auto rev = lforge_run({"distinguish", fx("chebyshev_v6.json"), fx("chebyshev_v6_reversed.json"), "--allow-reversal"});
  EXPECT_TRUE(rev.out.starts_with("ISOMORPHIC")) << rev.out;
}

TEST(Cli, LiftAndTower) {
  auto low = lforge_run({"lift", fx("graded_x3.json"), "--levels", "7..9"});
  EXPECT_EQ(low.code, cli::kInputError);
  EXPECT_TRUE(contains(low.err, "N = 7")) << low.err;
  auto ok = lforge_run({"lift", fx("free_w4.json"), "--levels", "6..8", "--trials", "3"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(ok.out.starts_with("lift: SURJECTIVE"));
  auto t = lforge_run({"tower", fx("tower_s3.json")});
  EXPECT_EQ(t.code, 0);
  EXPECT_TRUE(t.out.starts_with("lim¹: 1 orbit"));
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"certify", fx("chebyshev.json")},
           {"lift", fx("free_w246.json"), "--levels", "7..9", "--trials", "4"},
           {"tower", fx("tower_aut_gf3.json")},
           {"distinguish", fx("construct_mm.json"), fx("construct_mp_conj.json")}}) {
    auto serial = args;
    serial.insert(serial.begin(), {"--threads", "1"});
    EXPECT_EQ(lforge_run(serial).out, lforge_run(args).out) << args[0];
  }
}

TEST(Cli, MachineFormat) {
  auto r = lforge_run({"--format", "machine", "certify", fx("psi2_frobenius_fail.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.starts_with("FAILED\n{\"command\":\"certify\"")) << r.out;
  auto e = lforge_run({"--format", "machine", "certify", fx("malformed_polynomial.json")});
  EXPECT_EQ(e.code, 2);
  EXPECT_TRUE(contains(e.out + e.err, "\"line\":7")) << e.out << e.err;
}

TEST(Cli, ConvertRoundTrip) {
  const auto dir = fs::temp_directory_path() / "lforge_convert_test";
  fs::create_directories(dir);
  const auto a = (dir / "adams.json").string(), l = (dir / "lambda.json").string();
  EXPECT_EQ(lforge_run({"convert", fx("line_element_lambda.json"), "--to", "adams", "-o", a}).code, 0);
  EXPECT_EQ(lforge_run({"convert", a, "--to", "lambda", "-o", l}).code, 0);
  const auto back = parse_structure(read_text_file(l));
  const auto orig = parse_structure(read_text_file(fx("line_element_lambda.json")));
  EXPECT_EQ(back.lambda, orig.lambda);
  fs::remove_all(dir);
}

TEST(Cli, ConstructWritesCertifiableFile) {
  auto r = lforge_run({"construct", "--signs", "3=-1,5=-1"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto file = parse_structure(r.out);
  ASSERT_TRUE(file.has_k_model_shape());
  const auto dir = fs::temp_directory_path() / "lforge_construct_test";
  fs::create_directories(dir);
  write_text_file(dir / "mm.json", r.out);
  auto c = lforge_run({"invariants", (dir / "mm.json").string()});
  EXPECT_TRUE(contains(c.out, "(X/3)=-1 (X/5)=-1")) << c.out;
  fs::remove_all(dir);
  EXPECT_EQ(lforge_run({"construct", "--signs", "3=-1", "--box", "0"}).code, cli::kMathFailure);
}
