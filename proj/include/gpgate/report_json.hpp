#pragma once

#include <string>

#include "gpgate/gate.hpp"
#include "gpgate/synth.hpp"

#include <json.hpp>

// JSON schemas for the report types emitted by the CLI. Keys are serialized
// in sorted order and numbers are printed by the library's shortest-roundtrip
// formatter, so identical inputs produce byte-identical documents.

namespace gpgate {

nlohmann::json to_json(const GateReport& report);
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const SynthesisResult& result);

// Atomic write: temp file in the target directory, then rename.
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace gpgate
