#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "splasmon/integrator.hpp"

namespace splasmon {

/// Parses an INI-style run configuration:
///
///   [run]
///   variant = bidirectional
///   modes = 2048
///   dt = 1e-4
///   t_end = 0.8
///   sample_every = 10
///   snapshot_every = 0
///   seed = 7
///   blowup_ceiling = 1e6
///   [model]
///   alpha = 1
///   beta = 2
///   gamma = 0
///   nu = 0
///   Omega = 0
///   [initial]
///   generator = uv_ic
///   u = 1:1:0, 2:-0.8:1.8
///   v = -1:1:0
///   [forcing]
///   f = 3:0.1:0
///   g = -3:0.1:0
///   [dealias]
///   mode = exact_pad
///   pad_factor = 1
///   [output]
///   sobolev = -0.5, 0, 0.5, 1
///   surface_x = 512
///   surface_t = 256
///
/// Required: [run] variant, modes, dt, t_end and an [initial] generator or
/// explicit modes (k:re:im triples). [model] defaults to alpha = 1, beta = 2.
/// Unknown sections or keys are errors, as are type errors and initial or
/// forcing modes of the wrong sign.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig parse_config_file(const std::string& path);

/// Writes a configuration that parse_config reads back unchanged.
void write_config(std::ostream& out, const RunConfig& config);
std::string config_to_string(const RunConfig& config);

std::vector<std::string> preset_names();

/// Experiment presets: fig-uv, fig-uv-max-scan, fig-u, fig-szego,
/// fig-disp-pos, fig-disp-neg.
RunConfig preset(const std::string& name);

/// Resolutions used by `converge` for a preset (the preset's own N when it
/// does not define a scan).
std::vector<int> preset_resolutions(const std::string& name);

/// Parses "k:re:im, k:re:im, ...".
ModeList parse_mode_list(const std::string& text);
std::string format_mode_list(const ModeList& modes);

}  // namespace splasmon
