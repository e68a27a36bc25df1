#pragma once

// Brute force over small finite fields: group enumeration, class tables,
// norm fibers, and named verification suites.

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "twnorm/norm.hpp"

namespace twnorm {

inline constexpr std::uint64_t kDefaultBudget = 20'000'000;

/// Row-major base-q digits, first entry most significant: numeric order of
/// codes is the lexicographic enumeration order.
std::uint64_t encode(const Mat& a);
Mat decode(const Field& f, std::size_t rows, std::size_t cols, std::uint64_t code);

enum class GroupTag { GL, SO };
std::string_view to_string(GroupTag t);

/// |GL_n(F_q)| or |SO_{2m+1}(F_q)|; saturates at UINT64_MAX.
std::uint64_t group_order(GroupTag tag, std::size_t dim, std::int64_t q);

/// GL_n (dim = n) or SO_{2m+1} (dim = m), each element once, in code order.
std::vector<Mat> enumerate_group(const Field& f, GroupTag tag, std::size_t dim, std::uint64_t budget = kDefaultBudget);

struct ClassInfo {
  Mat rep; // least element of the class
  std::uint64_t size = 0;
  bool semisimple = false;       // eps-semisimple for GL
  bool regular = false;          // eps-regular for GL
  bool strongly_regular = false; // GL only, computed for regular semisimple classes
  bool solvable = true;          // GL only: Y + eps~(Y) = XX' has a solution
};

struct ClassTable {
  GroupTag tag = GroupTag::GL;
  std::size_t dim = 0; // n for GL, m for SO
  std::size_t m = 0;   // target SO_{2m+1} for the GL solvability flag
  const Field* field = nullptr;
  std::uint64_t group_order = 0;
  std::vector<ClassInfo> classes;
  std::unordered_map<std::uint64_t, std::size_t> class_index; // element code -> class

  std::size_t class_of(const Mat& a) const;
};

/// Orbits of Y -> g Y eps(g)^{-1} on GL_n(F_q).
ClassTable eps_class_table(const Field& f, std::size_t n, std::size_t m, std::uint64_t budget = kDefaultBudget);
/// Conjugacy classes of SO_{2m+1}(F_q).
ClassTable so_class_table(const Field& f, std::size_t m, std::uint64_t budget = kDefaultBudget);

struct FiberEntry {
  std::size_t twisted_class = 0;
  std::vector<std::size_t> norm_classes; // sorted
  std::uint64_t solutions = 0;           // X with XX' = Y + eps~(Y), Y the representative
};

struct FiberReport {
  std::size_t n = 0, m = 0;
  const Field* field = nullptr;
  ClassTable twisted;
  ClassTable so;
  std::vector<FiberEntry> mapping;                        // solvable twisted classes only
  std::map<std::size_t, std::vector<std::size_t>> fibers; // norm class -> twisted classes
  std::map<std::size_t, std::size_t> histogram;           // fiber size -> number of norm classes
  bool exhaustive_x = true;                               // every X scanned, not just an SO orbit
};

FiberReport norm_fiber_table(const Field& f, std::size_t n, std::size_t m, std::uint64_t budget = kDefaultBudget);

struct TransporterReport {
  std::vector<Mat> members;
  std::uint64_t group_order = 0;
  bool proper = false;
  bool rowspace_intermediate = false; // 0 < rowspace(X) < F^{2m+1}
};

/// H_X = {h in SO_{2m+1} : Xh = g X for an invertible g}.
TransporterReport right_transporter(const Mat& x, std::size_t m, std::uint64_t budget = kDefaultBudget);

struct Claim {
  std::string name;
  bool passed = true;
  std::uint64_t checked = 0;
  std::string detail;
  std::string counterexample;
};

struct SuiteReport {
  std::string name;
  std::vector<Claim> claims;
  std::map<std::string, std::string> notes; // descriptive data such as histograms

  bool passed() const;
};

struct SuiteConfig {
  std::vector<std::string> fields; // empty: suite default
  std::uint64_t seed = 0;
  std::uint64_t samples = 0; // 0: suite default
  std::uint64_t budget = kDefaultBudget;
};

std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, const SuiteConfig& config = {});

}  // namespace twnorm
