// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Usage: acceptance <path-to-dispgen-cli>.
// Exit status 0 iff every criterion passes.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dispgen/bounds.hpp"
#include "dispgen/dispersion.hpp"
#include "dispgen/io.hpp"
#include "dispgen/pipeline.hpp"
#include "oracles.hpp"

using namespace dispgen;

namespace {

std::string g_cli;

struct Check {
  std::string name;
  double time_limit_seconds;
  std::function<void()> body;
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

UnitPointSet full_grid(int m, int d) {
  const std::int32_t top = (1 << m) - 1;
  std::vector<std::vector<std::int32_t>> pts;
  std::vector<std::int32_t> x(static_cast<std::size_t>(d), 1);
  for (;;) {
    pts.push_back(x);
    int a = d - 1;
    while (a >= 0 && x[static_cast<std::size_t>(a)] == top) {
      x[static_cast<std::size_t>(a)] = 1;
      --a;
    }
    if (a < 0) break;
    ++x[static_cast<std::size_t>(a)];
  }
  return UnitPointSet(m, d, std::move(pts));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

// --- criterion bodies ------------------------------------------------------

void criterion_oracle_sanity() {
  require(exact_dispersion(UnitPointSet(2, 2, {})).volume == Rational(1), "empty set != 1");
  require(exact_dispersion(UnitPointSet(1, 2, {{1, 1}})).volume == Rational(1, 2),
          "midpoint != 1/2");
  for (int m : {2, 3})
    for (int d : {1, 2, 3}) {
      const Rational got = exact_dispersion(full_grid(m, d)).volume;
      require(got == Rational(1, pow2(static_cast<unsigned>(m))),
              "full grid m=" + std::to_string(m) + " d=" + std::to_string(d) + " gave " +
                  to_string(got));
    }
}

void criterion_cell_density() {
  for (auto [m, d] : {std::pair{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}}) {
    const BigInt total = ipow((BigInt(1) << m) - 1, static_cast<unsigned>(d));
    const auto pairs = enumerate_index_pairs(m, d);
    require(!pairs.empty(), "no index pairs enumerated");
    for (const auto& pr : pairs) {
      const RestrictionSet cell = core_cell(pr, m);
      require(BigInt(cell.size()) * pow2(static_cast<unsigned>(m) + 4) >= total,
              "cell density below 2^-(m+4) at m=" + std::to_string(m) +
                  " d=" + std::to_string(d));
    }
  }
}

void criterion_system_bounds() {
  for (auto [m, d] : {std::pair{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}}) {
    // Enumeration cardinality: #I_m <= (2^{m+3} d)^{m 2^m}, exactly.
    const auto pairs = enumerate_index_pairs(m, d);
    const BigInt cap =
        ipow(BigInt(pow2(static_cast<unsigned>(m) + 3)) * d, static_cast<unsigned>(m) << m);
    require(BigInt(pairs.size()) <= cap, "index pair count exceeds its bound");

    // Canonical system at this arity: M <= 2^{2 m k} and the size floor.
    const CellSystem system = build_cell_system(m, d);
    require(BigInt(system.sets.size()) <=
                pow2(2 * static_cast<unsigned>(m) * static_cast<unsigned>(d)),
            "system cardinality exceeds 2^{2mk}");
    const BigInt floor_num = ipow((BigInt(1) << m) - 1, static_cast<unsigned>(d));
    for (const auto& s : system.sets)
      require(BigInt(s.size()) * pow2(static_cast<unsigned>(m) + 4) >= floor_num,
              "canonical set below the density floor");
  }
}

void criterion_universal_route() {
  const GenerationResult small = generate_pattern_complete(Rational(1, 4), 2);
  require(small.points.size() == 9, "d=2 must give 9 points");
  std::set<std::vector<std::int32_t>> got(small.points.numerators().begin(),
                                          small.points.numerators().end());
  require(got.size() == 9, "d=2 grid has duplicates");
  for (std::int32_t a = 1; a <= 3; ++a)
    for (std::int32_t b = 1; b <= 3; ++b)
      require(got.contains({a, b}), "d=2 output is not the full grid");
  require(exact_dispersion(small.points).volume == Rational(1, 4), "d=2 dispersion != 1/4");

  const GenerationResult big = generate_pattern_complete(Rational(1, 4), 9);
  require(big.points.size() >= 6561, "d=9 below the pattern-count floor");
  require(big.points.size() <= 173000, "d=9 above the union-bound cap");
  require(verify_condition_s(to_grid_points(big.points)), "d=9 fails condition (S)");
}

void criterion_cell_route() {
  const GenerationResult r8 = generate_cell_cover(Rational(1, 4), 8);
  require(r8.points.size() <= 1024, "d=8 output exceeds 1024 points");
  require(verify_condition_s_prime(to_grid_points(r8.points)), "d=8 fails condition (S')");
  for (int d : {2, 3}) {
    const GenerationResult r = generate_cell_cover(Rational(1, 4), d);
    require(exact_dispersion(r.points).volume <= Rational(1, 4),
            "truncated output exceeds dispersion 1/4 at d=" + std::to_string(d));
  }
}

void criterion_splitters() {
  for (auto [n, k] : {std::pair{9, 2}, {16, 2}, {27, 3}, {64, 3}}) {
    const SplitterFamily f = build_rs_splitter(n, k);
    require(f.range() == k * k, "splitter codomain mismatch");
    require(is_splitter(f),
            "splitter (" + std::to_string(n) + "," + std::to_string(k) + ") not certified");
  }
}

void criterion_composition() {
  SplitMix64 rng(4242);
  int done = 0;
  while (done < 20) {
    auto problem = testing_oracles::random_invariant_problem(rng, 12, 3, 3);
    if (problem.arity() < 2) continue;
    const int l = problem.arity() * problem.arity();
    if (problem.length() <= l) continue;
    RestrictionProblem small(problem.alphabet(), problem.arity(), l, problem.sets());
    const WordSet core = solve_greedy(small).words;
    const SplitterFamily f = build_rs_splitter(problem.length(), problem.arity());
    require(verify_solution(compose(core, f), problem),
            "composed solution failed at instance " + std::to_string(done));
    ++done;
  }
}

void criterion_solver_contract() {
  SplitMix64 rng(31337);
  for (int t = 0; t < 100; ++t) {
    auto problem = testing_oracles::random_invariant_problem(rng);
    const auto sol = solve_greedy(problem);
    require(verify_solution(sol.words, problem), "greedy output failed verification");
    require(sol.words.size() <= union_bound_size(problem), "greedy output above union bound");
  }
}

void criterion_alphabet_lemmas() {
  // Alphabet reduction preserves universality on brute-force-built sets.
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= 2 && k <= n; ++k) {
      const UniversalSpec wide{n, k, 3};
      const WordSet t = build_universal(wide);
      require(is_universal(t, wide), "constructed set not universal");
      const WordSet r = reduce_alphabet(t);
      require(r.size() <= t.size(), "reduction grew the set");
      require(is_universal(r, {n, k, 2}), "reduction broke universality");
    }
  // Digit grouping transfers (mn, mk) binary universality to (n, k, 2^m).
  for (auto [mn, mk, m] : {std::tuple{4, 2, 2}, {6, 2, 2}, {6, 3, 3}}) {
    const UniversalSpec binary{mn, mk, 2};
    const WordSet t = build_universal(binary);
    const WordSet g = group_digits(t, m);
    require(g.size() == t.size(), "digit grouping changed the cardinality");
    require(is_universal(g, {mn / m, mk / m, 1 << m}), "digit grouping broke universality");
  }
}

void criterion_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "dispgen-acceptance";
  fs::create_directories(dir);
  const std::vector<std::string> configs = {
      "--epsilon 1/4 --dim 2 --algorithm sosnovec",
      "--epsilon 1/4 --dim 9 --algorithm sosnovec",
      "--epsilon 1/4 --dim 3 --algorithm uv",
      "--epsilon 1/4 --dim 8 --algorithm uv",
      "--epsilon 1/4 --dim 16 --algorithm random --seed 1",
      "--epsilon 1/4 --dim 2 --algorithm uv --solver randomized --seed 5",
      "--epsilon 1/4 --dim 30 --algorithm uv --k-override 2",
  };
  const int workers[3] = {1, 2, 4};
  int config_index = 0;
  for (const auto& config : configs) {
    std::string first;
    for (int run = 0; run < 3; ++run) {
      const fs::path out =
          dir / ("c" + std::to_string(config_index) + "_r" + std::to_string(run) + ".pts");
      const int status = run_cli(config + " --workers " + std::to_string(workers[run]) +
                                 " --out " + out.string());
      require(status == 0, "generate exited " + std::to_string(status) + " for: " + config);
      const std::string bytes = read_file(out);
      if (run == 0)
        first = bytes;
      else
        require(bytes == first, "bytes differ across runs for: " + config);
    }
    ++config_index;
  }

  // The expected cardinalities from the generate examples.
  const PointSetFile nine = read_point_set_file((dir / "c0_r0.pts").string());
  require(nine.points.size() == 9, "sosnovec d=2 file must hold 9 points");
  const PointSetFile uv3 = read_point_set_file((dir / "c2_r0.pts").string());
  require(uv3.points.size() <= 1024, "uv d=3 file too large");
  const PointSetFile rnd = read_point_set_file((dir / "c4_r0.pts").string());
  require(rnd.points.size() == 3195, "random d=16 file must hold 3195 points");

  // Exact verification through the CLI round trip.
  require(run_cli("verify --in " + (dir / "c0_r0.pts").string() + " --mode exact") == 0,
          "exact verify failed on the 9-point file");
  require(run_cli("verify --in " + (dir / "c3_r0.pts").string() + " --mode condition-s-prime") == 0,
          "condition-s-prime verify failed on the uv d=8 file");
}

void criterion_bounds_table() {
  const BoundsReport r = theoretical_bounds(Rational(1, 4), 16);
  require(r.lower_bound == Rational(2), "lower bound != 2");
  require(r.uv_upper == Rational(73728), "upper bound != 73728");
  require(r.sparse_grid == Rational(1024), "sparse grid bound != 1024");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-dispgen-cli>\n";
    return 2;
  }
  g_cli = argv[1];

  const std::vector<Check> checks = {
      {"1 exact-oracle-sanity", 10.0, criterion_oracle_sanity},
      {"2 cell-density-exhaustive", 60.0, criterion_cell_density},
      {"3 enumeration-bounds", 60.0, criterion_system_bounds},
      {"4 universal-route-end-to-end (slow)", 600.0, criterion_universal_route},
      {"5 cell-route-end-to-end (slow)", 600.0, criterion_cell_route},
      {"6 splitter-certification", 60.0, criterion_splitters},
      {"7 composition-soundness", 600.0, criterion_composition},
      {"8 solver-size-contract", 600.0, criterion_solver_contract},
      {"9 alphabet-lemma-suite", 600.0, criterion_alphabet_lemmas},
      {"10 generate-determinism", 1200.0, criterion_determinism},
      {"11 bounds-table", 10.0, criterion_bounds_table},
  };

  int failures = 0;
  for (const auto& check : checks) {
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      check.body();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (error.empty() && elapsed > check.time_limit_seconds)
      error = "exceeded the " + std::to_string(check.time_limit_seconds) + "s limit";
    std::printf("criterion %-38s %s (%.2fs)%s%s\n", check.name.c_str(),
                error.empty() ? "PASS" : "FAIL", elapsed, error.empty() ? "" : " -- ",
                error.c_str());
    std::fflush(stdout);
    if (!error.empty()) ++failures;
  }
  if (failures != 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", checks.size());
  return 0;
}
