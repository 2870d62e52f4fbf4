#include "toriclift/fan_io.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <regex>
#include <sstream>

#include "toriclift/errors.hpp"

namespace toriclift {

const NamedSubgroup* FanDocument::subgroup(const std::string& name) const {
  for (const auto& s : subgroups)
    if (s.name == name) return &s;
  return nullptr;
}

const NamedMorphism* FanDocument::morphism(const std::string& name) const {
  for (const auto& m : morphisms)
    if (m.name == name) return &m;
  return nullptr;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 computation failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

namespace {

bool is_integer_token(const std::string& s) {
  static const std::regex pattern("[+-]?[0-9]+");
  return std::regex_match(s, pattern);
}

Integer to_integer(std::string s) {
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

struct Token {
  std::string text;
  std::size_t column;
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      line.tokens.push_back({raw.substr(i, j - i), i + 1});
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

struct Located {
  std::size_t line, column;
};

struct RawDocument {
  std::optional<std::size_t> rank;
  std::vector<LatticeVector> rays;
  std::vector<Located> ray_pos;
  std::vector<std::vector<std::size_t>> cones;
  std::vector<std::vector<Located>> cone_pos;
  std::vector<NamedSubgroup> subgroups;
  std::vector<std::vector<IntVector>> subgroup_rows;
  std::vector<std::vector<Located>> subgroup_pos;
  std::vector<NamedMorphism> morphisms;
  std::vector<std::vector<IntVector>> morphism_rows;
};

RawDocument parse_lines(const std::string& text, const std::string& source) {
  RawDocument doc;
  const auto lines = tokenize(text);
  auto fail = [&](const Line& l, std::size_t col, const std::string& msg) -> ParseError {
    return ParseError(source, l.number, col, msg);
  };
  if (lines.empty()) throw ParseError(source, 1, 1, "empty fan file; expected header 'toricfan 1'");
  const Line& head = lines.front();
  if (head.tokens[0].text != "toricfan") throw fail(head, 1, "expected header 'toricfan 1'");
  if (head.tokens.size() != 2 || !is_integer_token(head.tokens[1].text))
    throw fail(head, head.tokens[0].column, "header must be 'toricfan <version>'");
  if (to_integer(head.tokens[1].text) != kFanFormatVersion)
    throw fail(head, head.tokens[1].column,
               "unsupported format version " + head.tokens[1].text + " (this build reads version " +
                   std::to_string(kFanFormatVersion) + ")");

  auto integers = [&](const Line& l, std::size_t from) {
    IntVector out;
    for (std::size_t k = from; k < l.tokens.size(); ++k) {
      if (!is_integer_token(l.tokens[k].text))
        throw fail(l, l.tokens[k].column, "expected an integer, found '" + l.tokens[k].text + "'");
      out.push_back(to_integer(l.tokens[k].text));
    }
    return out;
  };

  enum class Block { None, Subgroup, Morphism } block = Block::None;
  const Line* block_start = nullptr;
  for (std::size_t idx = 1; idx < lines.size(); ++idx) {
    const Line& l = lines[idx];
    const std::string& kw = l.tokens[0].text;
    if (block != Block::None) {
      if (kw == "end") {
        if (l.tokens.size() != 1) throw fail(l, l.tokens[1].column, "unexpected text after 'end'");
        block = Block::None;
      } else if (kw == "row") {
        IntVector row = integers(l, 1);
        if (block == Block::Subgroup) {
          doc.subgroup_rows.back().push_back(row);
          doc.subgroup_pos.back().push_back({l.number, l.tokens[0].column});
        } else {
          doc.morphism_rows.back().push_back(row);
        }
      } else {
        throw fail(l, l.tokens[0].column, "expected 'row' or 'end' inside a block, found '" + kw + "'");
      }
      continue;
    }
    if (kw == "rank") {
      if (doc.rank) throw fail(l, l.tokens[0].column, "rank declared twice");
      if (l.tokens.size() != 2 || !is_integer_token(l.tokens[1].text) || to_integer(l.tokens[1].text) < 0)
        throw fail(l, l.tokens[0].column, "expected 'rank <nonnegative integer>'");
      doc.rank = to_integer(l.tokens[1].text).get_ui();
    } else if (kw == "ray") {
      doc.rays.push_back(integers(l, 1));
      doc.ray_pos.push_back({l.number, l.tokens[0].column});
    } else if (kw == "cone") {
      IntVector raw = integers(l, 1);
      std::vector<std::size_t> cone;
      std::vector<Located> pos;
      for (std::size_t k = 0; k < raw.size(); ++k) {
        if (raw[k] < 0) throw fail(l, l.tokens[k + 1].column, "negative ray index " + raw[k].get_str());
        cone.push_back(raw[k].fits_ulong_p() ? raw[k].get_ui() : static_cast<std::size_t>(-1));
        pos.push_back({l.number, l.tokens[k + 1].column});
      }
      doc.cones.push_back(cone);
      doc.cone_pos.push_back(pos);
    } else if (kw == "subgroup") {
      if (l.tokens.size() != 2) throw fail(l, l.tokens[0].column, "expected 'subgroup <name>'");
      doc.subgroups.push_back({l.tokens[1].text, IntMatrix()});
      doc.subgroup_rows.emplace_back();
      doc.subgroup_pos.emplace_back();
      block = Block::Subgroup;
      block_start = &l;
    } else if (kw == "morphism") {
      if (l.tokens.size() != 3) throw fail(l, l.tokens[0].column, "expected 'morphism <name> <target path>'");
      doc.morphisms.push_back({l.tokens[1].text, l.tokens[2].text, IntMatrix()});
      doc.morphism_rows.emplace_back();
      block = Block::Morphism;
      block_start = &l;
    } else if (kw == "toricfan") {
      throw fail(l, l.tokens[0].column, "header repeated");
    } else {
      throw fail(l, l.tokens[0].column, "unknown keyword '" + kw + "'");
    }
  }
  if (block != Block::None) throw fail(*block_start, 1, "block is not closed with 'end'");
  if (!doc.rank) throw ParseError(source, head.number, 1, "missing 'rank' declaration");

  for (std::size_t i = 0; i < doc.rays.size(); ++i)
    if (doc.rays[i].size() != *doc.rank)
      throw ParseError(source, doc.ray_pos[i].line, doc.ray_pos[i].column,
                       "ray " + std::to_string(i) + " has " + std::to_string(doc.rays[i].size()) +
                           " coordinates, rank is " + std::to_string(*doc.rank));
  for (std::size_t c = 0; c < doc.cones.size(); ++c)
    for (std::size_t k = 0; k < doc.cones[c].size(); ++k)
      if (doc.cones[c][k] >= doc.rays.size())
        throw ParseError(source, doc.cone_pos[c][k].line, doc.cone_pos[c][k].column,
                         "cone " + std::to_string(c) + " refers to ray index " +
                             (doc.cones[c][k] == static_cast<std::size_t>(-1) ? std::string("(too large)")
                                                                              : std::to_string(doc.cones[c][k])) +
                             ", but only " + std::to_string(doc.rays.size()) + " rays are declared");
  for (std::size_t s = 0; s < doc.subgroups.size(); ++s)
    for (std::size_t k = 0; k < doc.subgroup_rows[s].size(); ++k)
      if (doc.subgroup_rows[s][k].size() != doc.rays.size())
        throw ParseError(source, doc.subgroup_pos[s][k].line, doc.subgroup_pos[s][k].column,
                         "subgroup '" + doc.subgroups[s].name + "' row has " +
                             std::to_string(doc.subgroup_rows[s][k].size()) + " entries, expected one per ray (" +
                             std::to_string(doc.rays.size()) + ")");
  return doc;
}

IntVector json_integers(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of integers");
  IntVector out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& x = j[k];
    if (x.is_number_integer()) {
      out.emplace_back(std::to_string(x.get<long long>()));
    } else if (x.is_string() && is_integer_token(x.get<std::string>())) {
      out.push_back(to_integer(x.get<std::string>()));
    } else {
      throw InputError(where + "/" + std::to_string(k) + ": expected an integer");
    }
  }
  return out;
}

std::vector<IntVector> json_rows(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of rows");
  std::vector<IntVector> rows;
  for (std::size_t k = 0; k < j.size(); ++k) rows.push_back(json_integers(j[k], where + "/" + std::to_string(k)));
  return rows;
}

RawDocument parse_json(const std::string& text, const std::string& source) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(source, line, column, "malformed JSON");
  }
  const std::string where = source + ": ";
  if (!j.is_object()) throw InputError(where + "top level must be an object");
  if (j.value("format", std::string()) != "toricfan") throw InputError(where + "/format must be \"toricfan\"");
  if (!j.contains("version") || !j["version"].is_number_integer())
    throw InputError(where + "/version must be an integer");
  if (j["version"].get<long long>() != kFanFormatVersion)
    throw InputError(where + "unsupported format version " + std::to_string(j["version"].get<long long>()));
  if (!j.contains("rank") || !j["rank"].is_number_unsigned()) throw InputError(where + "/rank must be a nonnegative integer");
  RawDocument doc;
  doc.rank = j["rank"].get<std::size_t>();
  doc.rays = json_rows(j.value("rays", nlohmann::json::array()), where + "/rays");
  for (std::size_t i = 0; i < doc.rays.size(); ++i)
    if (doc.rays[i].size() != *doc.rank)
      throw InputError(where + "/rays/" + std::to_string(i) + " has " + std::to_string(doc.rays[i].size()) +
                       " coordinates, rank is " + std::to_string(*doc.rank));
  for (const auto& raw : json_rows(j.value("cones", nlohmann::json::array()), where + "/cones")) {
    std::vector<std::size_t> cone;
    for (const auto& x : raw) {
      if (x < 0 || !x.fits_ulong_p() || x.get_ui() >= doc.rays.size())
        throw InputError(where + "/cones: ray index " + x.get_str() + " out of range (" +
                         std::to_string(doc.rays.size()) + " rays)");
      cone.push_back(x.get_ui());
    }
    doc.cones.push_back(cone);
  }
  for (const auto& s : j.value("subgroups", nlohmann::json::array())) {
    if (!s.is_object() || !s.contains("name") || !s["name"].is_string())
      throw InputError(where + "/subgroups: every entry needs a string name");
    auto rows = json_rows(s.value("rows", nlohmann::json::array()), where + "/subgroups/" + s["name"].get<std::string>());
    for (const auto& r : rows)
      if (r.size() != doc.rays.size())
        throw InputError(where + "subgroup '" + s["name"].get<std::string>() + "' row has " + std::to_string(r.size()) +
                         " entries, expected " + std::to_string(doc.rays.size()));
    doc.subgroups.push_back({s["name"].get<std::string>(), IntMatrix()});
    doc.subgroup_rows.push_back(rows);
  }
  for (const auto& m : j.value("morphisms", nlohmann::json::array())) {
    if (!m.is_object() || !m.contains("name") || !m.contains("target") || !m["target"].is_string())
      throw InputError(where + "/morphisms: every entry needs a name and a target path");
    doc.morphisms.push_back({m["name"].get<std::string>(), m["target"].get<std::string>(), IntMatrix()});
    doc.morphism_rows.push_back(json_rows(m.value("rows", nlohmann::json::array()), where + "/morphisms"));
  }
  return doc;
}

IntMatrix rows_to_matrix(const std::vector<IntVector>& rows, std::size_t cols) {
  return IntMatrix::from_rows(rows, rows.empty() ? cols : rows.front().size());
}

}  // namespace

FanDocument parse_fan_text(const std::string& text, const std::string& source_name, const FanLimits& limits) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  RawDocument raw = (first != std::string::npos && text[first] == '{') ? parse_json(text, source_name)
                                                                       : parse_lines(text, source_name);
  for (std::size_t m = 0; m < raw.morphisms.size(); ++m) {
    const auto& rows = raw.morphism_rows[m];
    for (const auto& r : rows)
      if (r.size() != *raw.rank)
        throw InputError(source_name + ": morphism '" + raw.morphisms[m].name + "' row has " +
                         std::to_string(r.size()) + " entries, expected the fan rank " + std::to_string(*raw.rank));
    raw.morphisms[m].matrix = rows_to_matrix(rows, *raw.rank);
  }
  for (std::size_t s = 0; s < raw.subgroups.size(); ++s)
    raw.subgroups[s].basis = rows_to_matrix(raw.subgroup_rows[s], raw.rays.size());
  for (std::size_t a = 0; a < raw.subgroups.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (raw.subgroups[a].name == raw.subgroups[b].name)
        throw InputError(source_name + ": subgroup '" + raw.subgroups[a].name + "' defined twice");
  Fan fan = [&] {
    try {
      return validate_fan(FanData{*raw.rank, raw.rays, raw.cones}, limits);
    } catch (const ResourceError& e) {
      throw ResourceError(source_name + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError(source_name + ": " + e.what(), e.issues());
    }
  }();
  return FanDocument{std::move(fan), std::move(raw.subgroups), std::move(raw.morphisms), sha256_hex(text), {}};
}

FanDocument parse_fan_file(const std::filesystem::path& path, const FanLimits& limits) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open fan file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  FanDocument doc = parse_fan_text(buf.str(), path.filename().string(), limits);
  doc.path = path;
  return doc;
}

std::string write_fan_text(const Fan& fan, const std::vector<NamedSubgroup>& subgroups) {
  std::ostringstream out;
  out << "toricfan " << kFanFormatVersion << "\nrank " << fan.rank() << "\n";
  for (const auto& r : fan.rays()) {
    out << "ray";
    for (const auto& x : r) out << " " << x;
    out << "\n";
  }
  for (const auto& c : fan.max_cones()) {
    out << "cone";
    for (auto i : c) out << " " << i;
    out << "\n";
  }
  for (const auto& s : subgroups) {
    out << "subgroup " << s.name << "\n";
    for (std::size_t i = 0; i < s.basis.rows(); ++i) {
      out << "row";
      for (const auto& x : s.basis.row(i)) out << " " << x;
      out << "\n";
    }
    out << "end\n";
  }
  return out.str();
}

std::string write_fan_json(const Fan& fan, const std::vector<NamedSubgroup>& subgroups) {
  auto ints = [](const IntVector& v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& x : v) {
      if (x.fits_slong_p())
        a.push_back(x.get_si());
      else
        a.push_back(x.get_str());
    }
    return a;
  };
  nlohmann::ordered_json j;
  j["format"] = "toricfan";
  j["version"] = kFanFormatVersion;
  j["rank"] = fan.rank();
  j["rays"] = nlohmann::json::array();
  for (const auto& r : fan.rays()) j["rays"].push_back(ints(r));
  j["cones"] = nlohmann::json::array();
  for (const auto& c : fan.max_cones()) j["cones"].push_back(c);
  if (!subgroups.empty()) {
    j["subgroups"] = nlohmann::json::array();
    for (const auto& s : subgroups) {
      nlohmann::ordered_json e;
      e["name"] = s.name;
      e["rows"] = nlohmann::json::array();
      for (std::size_t i = 0; i < s.basis.rows(); ++i) e["rows"].push_back(ints(s.basis.row(i)));
      j["subgroups"].push_back(e);
    }
  }
  return j.dump(2) + "\n";
}

std::optional<IntVector> parse_integer_list(const std::string& text) {
  IntVector out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.pop_back();
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.erase(0, 1);
    if (!is_integer_token(item)) return std::nullopt;
    out.push_back(to_integer(item));
  }
  if (out.empty()) return std::nullopt;
  return out;
}

}  // namespace toriclift
