#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "enrlat/curve_config.hpp"
#include "enrlat/fano.hpp"

namespace enrlat {

// On-disk configuration. Line-oriented; '#' starts a comment. Rationals are
// written as integer pairs p/q (or plain integers). Directives:
//
//   name <ident>
//   curve <name> [<name> ...]
//   edge <a> <b> <multiplicity>
//   gen <name> : <coef> <curve> [<coef> <curve> ...]
//   fiber <name> : <curve> [<curve> ...]          computed null vector
//   halfgen <name> : <curve> [<curve> ...]        generator = null vector / 2
//   class <name> : <coef> <ref> [<coef> <ref> ...] combination of declared names
//   sequence <name> : <halffiber> [tail ...] [; <halffiber> [tail ...]] ...
//   guard targets <t1> ... <tk>                   one target per curve
//   guard class <name>
struct ScenarioConfig {
    CurveConfig cfg;
    std::vector<IsotropicSequence> sequences;
    std::optional<VecQ> guard_targets;       // per-curve pairings to solve for
    std::optional<std::string> guard_class;  // named class used directly

    const IsotropicSequence& sequence(const std::string& name) const;
    // Resolve the declared guard into an ambient class (defaults to solving
    // all-ones targets when nothing is declared).
    DivClass resolve_guard(const AmbientModel& model) const;
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

ScenarioConfig parse_config(std::istream& in);
ScenarioConfig parse_config_string(const std::string& text);
ScenarioConfig load_config(const std::string& path);

}  // namespace enrlat
