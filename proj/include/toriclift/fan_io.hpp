#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "toriclift/fan.hpp"

namespace toriclift {

inline constexpr int kFanFormatVersion = 1;

struct NamedSubgroup {
  std::string name;
  IntMatrix basis;
};

struct NamedMorphism {
  std::string name;
  std::string target;  // path as written, relative to the document
  IntMatrix matrix;
};

/// A parsed and fan-validated fan file. Subgroup matrices are only checked
/// for shape here; DivisorSubgroup::create does the rest.
struct FanDocument {
  Fan fan;
  std::vector<NamedSubgroup> subgroups;
  std::vector<NamedMorphism> morphisms;
  std::string digest;  // SHA-256 of the raw bytes, lowercase hex
  std::filesystem::path path;

  const NamedSubgroup* subgroup(const std::string& name) const;
  const NamedMorphism* morphism(const std::string& name) const;
};

/// Accepts the line format or its JSON form (first non-blank byte '{').
/// Syntax problems raise ParseError with line and column; fan invariant
/// violations raise InputError listing every issue.
FanDocument parse_fan_text(const std::string& text, const std::string& source_name = "<input>",
                           const FanLimits& limits = {});
FanDocument parse_fan_file(const std::filesystem::path& path, const FanLimits& limits = {});

std::string write_fan_text(const Fan& fan, const std::vector<NamedSubgroup>& subgroups = {});
std::string write_fan_json(const Fan& fan, const std::vector<NamedSubgroup>& subgroups = {});

std::string sha256_hex(const std::string& bytes);

/// "1,0,0,1" → integers; ParseError-free helper for CLI flags.
std::optional<IntVector> parse_integer_list(const std::string& text);

}  // namespace toriclift
