#include "gvarkit/error.hpp"

namespace gvarkit {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::missing_column: return "MissingColumn";
        case Errc::malformed_date: return "MalformedDate";
        case Errc::malformed_value: return "MalformedValue";
        case Errc::empty_file: return "EmptyFile";
        case Errc::negative_value: return "NegativeValue";
        case Errc::interior_gap: return "InteriorGap";
        case Errc::unknown_state: return "UnknownState";
        case Errc::window_empty: return "WindowEmpty";
        case Errc::isolated_unit: return "IsolatedUnit";
        case Errc::unknown_label: return "UnknownLabel";
        case Errc::index_out_of_range: return "IndexOutOfRange";
        case Errc::empty_filter: return "EmptyFilter";
        case Errc::inconsistent_meta: return "InconsistentMeta";
        case Errc::singular_design: return "SingularDesign";
        case Errc::sample_too_short: return "SampleTooShort";
        case Errc::singular_g: return "SingularG";
        case Errc::ill_conditioned: return "IllConditioned";
        case Errc::dimension_mismatch: return "DimensionMismatch";
        case Errc::unknown_region: return "UnknownRegion";
        case Errc::empty_region: return "EmptyRegion";
        case Errc::weight_mismatch: return "WeightMismatch";
        case Errc::multi_state_scenario: return "MultiStateScenario";
        case Errc::empty_residuals: return "EmptyResiduals";
        case Errc::too_many_unstable: return "TooManyUnstableReplications";
        case Errc::unstable_point_system: return "UnstablePointSystem";
        case Errc::non_concave_likelihood: return "NonConcaveLikelihood";
        case Errc::non_convergence: return "NonConvergence";
        case Errc::too_few_states: return "TooFewStates";
        case Errc::unstable_spec: return "UnstableSpec";
        case Errc::config_error: return "ConfigError";
        case Errc::input_missing: return "InputMissing";
        case Errc::unknown_command: return "UnknownCommand";
    }
    return "UnknownError";
}

}  // namespace gvarkit
