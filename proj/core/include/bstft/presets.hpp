// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "bstft/config.hpp"

namespace bstft {

/// Gain linewidth fitted so the two-tone resolution at 1 GHz/us is 60 MHz.
inline constexpr double kCalibratedGainFwhm = 17.5e6;

/// fig3a..fig3c, fig4a..fig4c, fig5a, fig5b, fig6a..fig6d, fig7, fig8a..fig8e, fig9.
const std::vector<std::string>& preset_names();

/// Throws InvalidArgument for unknown names.
ExperimentConfig preset(const std::string& name);

/// Lower tone of a multitone SUT, otherwise the middle of the analysis range.
double default_probe_frequency(const ExperimentConfig& cfg);

}  // namespace bstft
