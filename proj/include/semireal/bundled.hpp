#pragma once

#include <string>
#include <vector>

#include "semireal/covers.hpp"
#include "semireal/lsc_real.hpp"
#include "semireal/machine.hpp"

namespace semireal {

// Embedded example corpus: three machines, six series, four covers, usable
// by name from any working directory. Texts are in the same formats the
// file loaders accept.

std::vector<std::string> bundled_machine_names();
std::vector<std::string> bundled_series_names();
std::vector<std::string> bundled_cover_names();

// Raw text of one corpus entry; DomainError on unknown names.
const std::string& bundled_machine_text(const std::string& name);
const std::string& bundled_series_text(const std::string& name);
const std::string& bundled_cover_text(const std::string& name);

Machine bundled_machine(const std::string& name);
LscReal bundled_series(const std::string& name);
Cover bundled_cover(const std::string& name);

// CLI argument resolution: `bundled:NAME` forces the corpus, a bare corpus
// name hits it too, anything else is read as a file path.
Machine resolve_machine(const std::string& arg);
LscReal resolve_series(const std::string& arg);
Cover resolve_cover(const std::string& arg);

}  // namespace semireal
