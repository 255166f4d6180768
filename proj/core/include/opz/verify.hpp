#ifndef OPZ_VERIFY_HPP
#define OPZ_VERIFY_HPP

#include <functional>
#include <string>
#include <vector>

#include "opz/recursion.hpp"

namespace opz {

enum class CheckStatus { Pass, Fail, Skip };

std::string_view to_string(CheckStatus s) noexcept;

struct CheckRow {
  int criterion = 0;
  std::string check;
  std::string model;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

struct NamedModel {
  std::string name;
  Model model;
};

/// Fixed models the criteria are stated on.
NamedModel chebyshev_model();
NamedModel jacobi_12_model();
NamedModel jacobi_11_model();
NamedModel random_jacobi_model();
NamedModel verblunsky_half_model();
NamedModel random_verblunsky_model();
NamedModel free_verblunsky_model();
std::vector<NamedModel> oprl_test_models();
std::vector<NamedModel> opuc_test_models();

/// Criteria on their reference models. Each returns one or more rows.
std::vector<CheckRow> check_chebyshev_exactness();
std::vector<CheckRow> check_exact_zeros(const NamedModel& m);
std::vector<CheckRow> check_reference_bands();
std::vector<CheckRow> check_band_edges(const NamedModel& m);
std::vector<CheckRow> check_reference_capacity();
std::vector<CheckRow> check_thouless(const NamedModel& m);
std::vector<CheckRow> check_counting_bounds(const NamedModel& m);
std::vector<CheckRow> check_clock_law();
std::vector<CheckRow> check_floquet_band(const NamedModel& m);
std::vector<CheckRow> check_jost_convergence(const NamedModel& m);
std::vector<CheckRow> check_jost_zeros(const NamedModel& m);
std::vector<CheckRow> check_opuc_exactness(const NamedModel& m);
std::vector<CheckRow> check_free_case();
std::vector<CheckRow> check_opuc_clock(const NamedModel& m);
/// Free OPUC model: every zero sits at the origin, so none is windowed.
std::vector<CheckRow> check_free_clock(const NamedModel& m);
/// Runs the deterministic subcommands twice and compares the rendered bytes.
std::vector<CheckRow> check_determinism(const NamedModel& m);

struct VerifyReport {
  std::vector<CheckRow> rows;
  /// Check operations the run never reached.
  std::vector<std::string> missing_coverage;

  bool ok() const;
};

/// Every criterion for one model: the applicable model-specific checks plus
/// the reference checks of criteria 1, 3 and 6. Rows that do not apply to the
/// model kind are reported as skipped. An internal checklist asserts that
/// every check operation ran at least once.
VerifyReport verify_model(const NamedModel& m);

/// Operations the verify checklist requires for a model kind.
std::vector<std::string> required_coverage(ModelKind kind);

}  // namespace opz

#endif  // OPZ_VERIFY_HPP
