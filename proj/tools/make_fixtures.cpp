// Regenerates the structure fixtures: lforge_make_fixtures <fixture-dir>
#include <filesystem>
#include <iostream>

#include "lforge/io.hpp"
#include "lforge/polynomial_io.hpp"

using namespace lforge;

namespace {

void save(const std::filesystem::path& dir, const std::string& name, const StructureFile& f) {
  write_text_file(dir / name, print_structure(f));
  std::cout << "wrote " << (dir / name).string() << '\n';
}

StructureFile with_ko(StructureFile f, long a) {
  f.ko = KOModelStructure::with_a(a);
  return f;
}

StructureFile free_file(const std::vector<int>& weights, int trunc) {
  StructureFile f;
  f.presentation = Presentation::free(CoefficientRing::integers(), weights, trunc);
  return f;
}

StructureFile graded_file(std::vector<std::pair<std::string, int>> gens, std::vector<std::string> rels,
                          std::optional<int> n = std::nullopt) {
  StructureFile f;
  f.graded.emplace(CoefficientRing::integers(), std::move(gens), std::move(rels), n);
  f.presentation = f.graded->base();
  return f;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: lforge_make_fixtures <dir>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);

  // Reference structures.
  save(dir, "chebyshev.json", with_ko(structure_from_k_model(chebyshev_structure({2, 3, 5, 7}, 8, 12), 12), 1));
  const auto cheb6 = chebyshev_structure({2, 3, 5}, 6, 6);
  save(dir, "chebyshev_v6.json", with_ko(structure_from_k_model(cheb6, 6), 1));

  // Four sign vectors on {3, 5} and an orientation-preserving conjugate of each.
  const auto P6 = KModelStructure::default_presentation(6);
  const auto phi = parse_series(P6, "v + v^2 - 2*v^3");
  for (int s3 : {1, -1})
    for (int s5 : {1, -1}) {
      const std::string tag = std::string(s3 > 0 ? "p" : "m") + (s5 > 0 ? "p" : "m");
      const auto s = construct_structure({{3, s3}, {5, s5}}, {3, 5}, 6);
      save(dir, "construct_" + tag + ".json", structure_from_k_model(s, 6));
      save(dir, "construct_" + tag + "_conj.json", structure_from_k_model(conjugate(s, phi), 6));
    }
  // Orientation-reversing conjugate of the reference structure.
  save(dir, "chebyshev_v6_reversed.json",
       structure_from_k_model(conjugate(cheb6, parse_series(P6, "-v + v^2")), 6));

  // psi^2(x) = x^2 + x fails Frobenius at 2.
  {
    StructureFile f;
    f.presentation = Presentation::make(CoefficientRing::integers(), {{"x", 1, 0}}, {}, 6);
    f.adams.emplace(f.presentation);
    f.adams->set_images(2, {parse_series(f.presentation, "x^2 + x")});
    f.primes = {2};
    f.exponent_bound = 2;
    save(dir, "psi2_frobenius_fail.json", f);
  }
  // Line element: psi^k(x) = x^k over Z with x of filtration 1.
  {
    StructureFile f;
    f.presentation = Presentation::make(CoefficientRing::integers(), {{"x", 1, 0}}, {}, 9);
    f.lambda = LambdaFamily::lines(f.presentation, 8);
    f.primes = {2, 3, 5, 7};
    f.exponent_bound = 8;
    save(dir, "line_element_lambda.json", f);
  }

  for (long a : {1L, 7L, 25L, 13L, -1L, 5L, 11L}) {
    const std::string name = "ko_a" + std::string(a < 0 ? "m" : "") + std::to_string(a < 0 ? -a : a) + ".json";
    save(dir, name, structure_from_ko(KOModelStructure::with_a(a)));
  }

  save(dir, "free_w4.json", free_file({4}, 6));
  save(dir, "free_w246.json", free_file({2, 4, 6}, 8));
  save(dir, "graded_x3.json", graded_file({{"x", 2}}, {"x^3"}));
  save(dir, "graded_x3_n13.json", graded_file({{"x", 2}}, {"x^3"}, 13));
  save(dir, "graded_shear.json", graded_file({{"x", 2}, {"y", 4}}, {"x^3"}));
  return 0;
}
