#pragma once

#include <stdexcept>
#include <string>

namespace gvarkit {

/// Machine-checkable failure codes shared by all modules.
enum class Errc {
    // input parsing
    missing_column,
    malformed_date,
    malformed_value,
    empty_file,
    negative_value,
    interior_gap,
    unknown_state,
    window_empty,
    // weights
    isolated_unit,
    unknown_label,
    index_out_of_range,
    // shock construction
    empty_filter,
    inconsistent_meta,
    // estimation
    singular_design,
    sample_too_short,
    // stacked system
    singular_g,
    ill_conditioned,
    dimension_mismatch,
    // impulse responses
    unknown_region,
    empty_region,
    weight_mismatch,
    multi_state_scenario,
    // bootstrap
    empty_residuals,
    too_many_unstable,
    unstable_point_system,
    // comparison estimators
    non_concave_likelihood,
    non_convergence,
    too_few_states,
    // synthetic data
    unstable_spec,
    // command line
    config_error,
    input_missing,
    unknown_command,
};

const char* errc_name(Errc code);

/// Exception type used across the library; carries an Errc for tests and
/// machine-readable error records.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace gvarkit
