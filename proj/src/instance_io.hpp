#pragma once

#include "instance.hpp"
#include "reductions.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace feq {

using ojson = nlohmann::ordered_json;

// One merge part: reduce on a (possibly restricted) copy of the base instance.
struct MergePart {
  Side side;
  Element base;
  std::string restrict_target; // "J", "K", or empty for no restriction
  std::vector<std::int64_t> restrict_pairs;
  std::string tag;
};

// An instance file parsed into exactly one of the three instance kinds.
struct ParsedInstance {
  std::string kind; // "triple" | "power" | "partial"
  std::string name;
  std::vector<std::pair<std::string, SetPtr>> sets; // declaration order
  std::optional<TripleInstance> triple;
  std::optional<PowerInstance> power;
  std::optional<PartialInstance> partial;
  std::vector<MergePart> parts; // partial kind only
};

ParsedInstance parse_instance_text(const std::string& text);
ParsedInstance parse_instance_file(const std::string& path);

// canonical form: builders expanded to explicit tables, elements as strings
ojson emit_instance(const ParsedInstance& p);
std::string emit_instance_text(const ParsedInstance& p);

// "fnv1a64:<16 hex digits>" over the canonical text
std::string instance_digest(const ParsedInstance& p);

// function file: {"schema_version":1, "sets": {...}, "function": {...}}
TabulatedFn parse_function_text(const std::string& text);
TabulatedFn parse_function_file(const std::string& path);

// restriction file: {"function":"K", "pairs":[["y","z"],...], "tag":"low"}
struct RestrictSpec {
  std::string target; // "J" or "K"
  std::vector<std::vector<std::string>> pairs;
  std::string tag;
};
RestrictSpec parse_restrict_text(const std::string& text);
RestrictSpec parse_restrict_file(const std::string& path);
PartialInstance apply_restriction(const PartialInstance& p, const RestrictSpec& r);

// function table as report JSON: arg set names, codomain name, value strings
ojson function_json(const TabulatedFn& f);

std::string fnv1a64_hex(const std::string& text);

} // namespace feq
