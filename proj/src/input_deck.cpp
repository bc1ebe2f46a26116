// SPDX-License-Identifier: Apache-2.0
#include "umat/input_deck.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <set>

#include "umat/errors.hpp"

namespace umat {

FiberSet MaterialSpec::fiber_set() const {
  if (fibers) return *fibers;
  return FiberSet::cartesian(table.ndir);
}

namespace {

constexpr std::string_view kUniversalTab = "UNIVERSAL_TAB";
constexpr std::string_view kMixedInv = "MIXED_INV";
constexpr int kUniversalFields = 7;
constexpr int kMixedFields = 1 + kNumInvariants;

struct Field {
  std::string text;  // trimmed
  int line = 0;
  int col = 0;  // 1-based column of the first non-blank character
};

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Uppercases and collapses internal whitespace runs to one blank.
std::string normalize_word(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : trim(s)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(trim(s));
}

// Comma split that ignores commas inside double quotes.
std::vector<Field> split_fields(std::string_view line, int line_no) {
  std::vector<Field> fields;
  std::size_t start = 0;
  bool quoted = false;
  auto emit = [&](std::size_t end) {
    const std::string_view raw = line.substr(start, end - start);
    std::size_t lead = 0;
    while (lead < raw.size() && std::isspace(static_cast<unsigned char>(raw[lead]))) ++lead;
    fields.push_back({std::string(trim(raw)), line_no, static_cast<int>(start + lead) + 1});
  };
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == ',' && !quoted) {
      emit(i);
      start = i + 1;
    }
  }
  emit(line.size());
  return fields;
}

int parse_int(const Field& f, const char* what) {
  std::string_view s = f.text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(f.line, f.col, std::string("expected an integer for ") + what + ", got '" + f.text + "'");
  }
  return value;
}

double parse_float(const Field& f, const char* what) {
  std::string_view s = f.text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw ParseError(f.line, f.col, std::string("expected a number for ") + what + ", got '" + f.text + "'");
  }
  return value;
}

struct Option {
  std::string key;  // normalized
  std::optional<std::string> value;
  Field field;
};

struct Keyword {
  std::string name;  // normalized
  std::vector<Option> options;
  int line = 0;
};

enum class Block { None, NoData, TypeDecl, Universal, Mixed, Fibers };

class DeckParser {
 public:
  DeckParser(std::string_view text, std::vector<Diagnostic>* warnings) : warnings_(warnings) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t nl = text.find('\n', pos);
      std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines_.emplace_back(line);
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
  }

  MaterialSpec run() {
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      const int line_no = static_cast<int>(i) + 1;
      const std::string_view t = trim(lines_[i]);
      if (t.empty() || t.substr(0, 2) == "**") continue;
      if (t.front() == '*') {
        finish_block();
        handle_keyword(read_keyword(i));
        continue;
      }
      handle_data(lines_[i], line_no);
    }
    finish_block();
    return finalize();
  }

 private:
  // Reads a keyword line plus any continuation lines (previous line ended in a comma).
  Keyword read_keyword(std::size_t& i) {
    Keyword kw;
    kw.line = static_cast<int>(i) + 1;
    std::vector<Field> fields;
    while (true) {
      const std::string_view raw = lines_[i];
      const std::size_t star = raw.find('*');
      const bool first = fields.empty();
      auto part = split_fields(first ? raw.substr(star + 1) : raw, static_cast<int>(i) + 1);
      if (first) {
        for (auto& f : part) f.col += static_cast<int>(star) + 1;
      }
      const bool continues = !part.empty() && part.back().text.empty() && part.size() > 1;
      if (continues) part.pop_back();
      fields.insert(fields.end(), part.begin(), part.end());
      if (!continues || i + 1 >= lines_.size()) break;
      const std::string_view next = trim(lines_[i + 1]);
      if (next.empty() || next.front() == '*') break;
      ++i;
    }
    kw.name = normalize_word(fields.front().text);
    for (std::size_t k = 1; k < fields.size(); ++k) {
      const Field& f = fields[k];
      if (f.text.empty()) throw ParseError(f.line, f.col, "empty keyword option");
      Option opt;
      opt.field = f;
      const auto eq = f.text.find('=');
      if (eq == std::string::npos) {
        opt.key = normalize_word(f.text);
      } else {
        opt.key = normalize_word(std::string_view(f.text).substr(0, eq));
        opt.value = unquote(std::string_view(f.text).substr(eq + 1));
      }
      kw.options.push_back(std::move(opt));
    }
    return kw;
  }

  static const Option* find_option(const Keyword& kw, std::string_view key) {
    for (const auto& o : kw.options) {
      if (o.key == key) return &o;
    }
    return nullptr;
  }

  static void reject_unknown_options(const Keyword& kw, std::initializer_list<std::string_view> known) {
    for (const auto& o : kw.options) {
      bool ok = false;
      for (auto k : known) ok = ok || o.key == k;
      if (!ok) throw ParseError(o.field.line, o.field.col, "unknown option '" + o.key + "' for *" + kw.name);
    }
  }

  static const std::string& required_value(const Keyword& kw, const Option* o, std::string_view key) {
    if (o == nullptr) throw ParseError(kw.line, 1, "*" + kw.name + " requires option " + std::string(key));
    if (!o->value || o->value->empty()) {
      throw ParseError(o->field.line, o->field.col, "option " + std::string(key) + " needs a value");
    }
    return *o->value;
  }

  void handle_keyword(const Keyword& kw) {
    if (kw.name == "INCLUDE") {
      throw ParseError(kw.line, 1, "*INCLUDE is not supported; paste the included definitions inline");
    }
    if (kw.name == "MATERIAL") {
      if (material_seen_) throw ParseError(kw.line, 1, "duplicate *MATERIAL keyword");
      material_seen_ = true;
      reject_unknown_options(kw, {"NAME", "UNITS"});
      if (const auto* o = find_option(kw, "NAME")) spec_.name = required_value(kw, o, "NAME");
      if (const auto* o = find_option(kw, "UNITS")) spec_.units = required_value(kw, o, "UNITS");
      block_ = Block::NoData;
      return;
    }
    if (kw.name == "ANISOTROPIC HYPERELASTIC") {
      handle_header(kw);
      block_ = Block::NoData;
      return;
    }
    if (kw.name == "PARAMETER TABLE TYPE") {
      handle_type_declaration(kw);
      return;
    }
    if (kw.name == "PARAMETER TABLE") {
      const auto* o = find_option(kw, "TYPE");
      reject_unknown_options(kw, {"TYPE"});
      const std::string type = normalize_word(required_value(kw, o, "TYPE"));
      if (type == kUniversalTab) {
        block_ = Block::Universal;
      } else if (type == kMixedInv) {
        block_ = Block::Mixed;
      } else if (declared_types_.count(type) > 0) {
        throw ParseError(o->field.line, o->field.col, "parameter table type " + type + " is declared but not supported");
      } else {
        throw ParseError(o->field.line, o->field.col, "undeclared parameter table type " + type);
      }
      return;
    }
    if (kw.name == "FIBER DIRECTIONS") {
      reject_unknown_options(kw, {});
      if (fibers_line_ != 0) throw ParseError(kw.line, 1, "duplicate *FIBER DIRECTIONS keyword");
      fibers_line_ = kw.line;
      block_ = Block::Fibers;
      return;
    }
    throw ParseError(kw.line, 1, "unknown keyword *" + kw.name);
  }

  void handle_header(const Keyword& kw) {
    if (header_line_ != 0) throw ParseError(kw.line, 1, "duplicate *ANISOTROPIC HYPERELASTIC header");
    header_line_ = kw.line;
    reject_unknown_options(kw, {"USER", "FORMULATION", "TYPE", "LOCAL DIRECTIONS"});
    if (const auto* o = find_option(kw, "USER"); o && o->value) {
      throw ParseError(o->field.line, o->field.col, "USER takes no value");
    }
    if (const auto* o = find_option(kw, "FORMULATION")) {
      if (normalize_word(required_value(kw, o, "FORMULATION")) != "INVARIANT") {
        throw ParseError(o->field.line, o->field.col, "only FORMULATION=INVARIANT is supported");
      }
    }
    if (const auto* o = find_option(kw, "TYPE")) {
      const std::string type = normalize_word(required_value(kw, o, "TYPE"));
      if (type == "INCOMPRESSIBLE") {
        spec_.table.material_type = MaterialType::Incompressible;
      } else if (type == "COMPRESSIBLE") {
        spec_.table.material_type = MaterialType::Compressible;
      } else {
        throw ParseError(o->field.line, o->field.col, "TYPE must be INCOMPRESSIBLE or COMPRESSIBLE");
      }
    }
    if (const auto* o = find_option(kw, "LOCAL DIRECTIONS")) {
      Field f = o->field;
      f.text = required_value(kw, o, "LOCAL DIRECTIONS");
      const int ndir = parse_int(f, "LOCAL DIRECTIONS");
      if (ndir < 0 || ndir > 3) throw ParseError(f.line, f.col, "LOCAL DIRECTIONS must be between 0 and 3");
      spec_.table.ndir = ndir;
    }
  }

  void handle_type_declaration(const Keyword& kw) {
    reject_unknown_options(kw, {"NAME", "PARAMETERS"});
    const auto* name_opt = find_option(kw, "NAME");
    decl_name_ = normalize_word(required_value(kw, name_opt, "NAME"));
    decl_expected_ = -1;
    if (const auto* o = find_option(kw, "PARAMETERS")) {
      Field f = o->field;
      f.text = required_value(kw, o, "PARAMETERS");
      decl_expected_ = parse_int(f, "PARAMETERS");
      if (decl_expected_ < 1) throw ParseError(f.line, f.col, "PARAMETERS must be positive");
    }
    const int builtin = decl_name_ == kUniversalTab ? kUniversalFields : decl_name_ == kMixedInv ? kMixedFields : -1;
    if (builtin > 0 && decl_expected_ > 0 && decl_expected_ != builtin) {
      throw ParseError(kw.line, 1, decl_name_ + " has " + std::to_string(builtin) + " parameters, not " +
                                       std::to_string(decl_expected_));
    }
    if (builtin > 0) decl_expected_ = builtin;
    declared_types_.insert(decl_name_);
    decl_line_ = kw.line;
    decl_count_ = 0;
    block_ = Block::TypeDecl;
  }

  void handle_data(std::string_view raw, int line_no) {
    auto fields = split_fields(raw, line_no);
    // A trailing comma is tolerated on every data line.
    if (fields.size() > 1 && fields.back().text.empty()) fields.pop_back();
    switch (block_) {
      case Block::None:
      case Block::NoData:
        throw ParseError(line_no, fields.front().col, "data line outside of a table");
      case Block::TypeDecl: return type_decl_line(fields);
      case Block::Universal: return universal_row(fields);
      case Block::Mixed: return mixed_fields(fields);
      case Block::Fibers: return fiber_row(fields);
    }
  }

  void type_decl_line(const std::vector<Field>& fields) {
    const Field& f = fields.front();
    const std::string type = normalize_word(f.text);
    if (type != "INTEGER" && type != "FLOAT" && type != "STRING" && type != "BOOLEAN") {
      throw ParseError(f.line, f.col, "unknown parameter data type '" + f.text + "'");
    }
    ++decl_count_;
    if (decl_expected_ > 0 && decl_count_ > decl_expected_) {
      throw ParseError(f.line, f.col, "more parameter declarations than PARAMETERS=" + std::to_string(decl_expected_));
    }
    std::string expected;
    if (decl_name_ == kUniversalTab) expected = decl_count_ <= 4 ? "INTEGER" : "FLOAT";
    if (decl_name_ == kMixedInv) expected = decl_count_ == 1 ? "INTEGER" : "FLOAT";
    if (!expected.empty() && type != expected) {
      throw ParseError(f.line, f.col, decl_name_ + " parameter " + std::to_string(decl_count_) + " must be " + expected);
    }
  }

  void universal_row(const std::vector<Field>& fields) {
    const int line_no = fields.front().line;
    if (static_cast<int>(fields.size()) != kUniversalFields) {
      throw ParseError(line_no, fields.front().col,
                       "UNIVERSAL_TAB row has " + std::to_string(fields.size()) + " fields, expected 7");
    }
    NeuronRow row;
    row.kfinv = parse_int(fields[0], "kfinv");
    const int kf0 = parse_int(fields[1], "kf0");
    row.kf1 = parse_int(fields[2], "kf1");
    const int kf2 = parse_int(fields[3], "kf2");
    row.w0 = parse_float(fields[4], "w0");
    row.w1 = parse_float(fields[5], "w1");
    row.w2 = parse_float(fields[6], "w2");

    if (row.kfinv < 1 || (row.kfinv > kNumInvariants && row.kfinv < kFirstMixedIndex)) {
      throw ParseError(line_no, fields[0].col, "kfinv " + std::to_string(row.kfinv) + " is out of range");
    }
    if (kf0 < 1 || kf0 > 3) throw ParseError(line_no, fields[1].col, "kf0 must be 1, 2 or 3");
    if (row.kf1 < 1 || row.kf1 > kMaxPower) {
      throw ParseError(line_no, fields[2].col, "kf1 must be a power between 1 and " + std::to_string(kMaxPower));
    }
    if (kf2 < 1 || kf2 > 3) throw ParseError(line_no, fields[3].col, "kf2 must be 1, 2 or 3");
    row.kf0 = static_cast<ZerothActivation>(kf0);
    row.kf2 = static_cast<SecondActivation>(kf2);
    spec_.table.rows.push_back(row);
    row_lines_.push_back({line_no, fields[0].col});
  }

  void mixed_fields(const std::vector<Field>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
      pending_mixed_.push_back(fields[k]);
      if (static_cast<int>(pending_mixed_.size()) < kMixedFields) continue;
      if (k + 1 < fields.size()) {
        throw ParseError(fields[k + 1].line, fields[k + 1].col, "MIXED_INV row has more than 16 fields");
      }
      complete_mixed_row();
    }
  }

  void complete_mixed_row() {
    const Field& head = pending_mixed_.front();
    const int n = parse_int(head, "mixed invariant index");
    MixedInvariantRow row;
    if (n >= 1 && n < 100) {
      row.index = kFirstMixedIndex - 1 + n;
    } else if (n >= kFirstMixedIndex) {
      row.index = n;
    } else {
      throw ParseError(head.line, head.col, "mixed invariant index must be 1..99 or at least 101");
    }
    for (const auto& m : spec_.table.mixed) {
      if (m.index == row.index) {
        throw ParseError(head.line, head.col, "duplicate MIXED_INV index " + std::to_string(row.index - 100));
      }
    }
    for (std::size_t j = 0; j < kNumInvariants; ++j) {
      row.kappa[j] = parse_float(pending_mixed_[j + 1], "mixed invariant coefficient");
    }
    spec_.table.mixed.push_back(row);
    pending_mixed_.clear();
  }

  void fiber_row(const std::vector<Field>& fields) {
    if (fields.size() != 3) {
      throw ParseError(fields.front().line, fields.front().col,
                       "fiber direction needs 3 components, got " + std::to_string(fields.size()));
    }
    Vec3 n(parse_float(fields[0], "fiber component"), parse_float(fields[1], "fiber component"),
           parse_float(fields[2], "fiber component"));
    if (n.norm() == 0.0) throw ParseError(fields.front().line, fields.front().col, "zero fiber direction");
    if (fiber_dirs_.size() == 3) throw ParseError(fields.front().line, fields.front().col, "more than three fiber directions");
    fiber_dirs_.push_back(n);
  }

  void finish_block() {
    if (block_ == Block::Mixed && !pending_mixed_.empty()) {
      const Field& head = pending_mixed_.front();
      throw ParseError(head.line, head.col, "incomplete MIXED_INV row: " + std::to_string(pending_mixed_.size()) +
                                                " of 16 fields");
    }
    if (block_ == Block::TypeDecl && decl_count_ != 0 && decl_expected_ > 0 && decl_count_ != decl_expected_) {
      throw ParseError(decl_line_, 1, "parameter table type " + decl_name_ + " declares " +
                                          std::to_string(decl_count_) + " of " + std::to_string(decl_expected_) +
                                          " parameters");
    }
    block_ = Block::None;
  }

  void warn(int line, std::string message) {
    if (warnings_ != nullptr) warnings_->push_back({line, std::move(message)});
  }

  MaterialSpec finalize() {
    if (header_line_ == 0) {
      const int line = row_lines_.empty() ? 1 : row_lines_.front().first;
      throw ParseError(line, 1, "missing *ANISOTROPIC HYPERELASTIC header");
    }
    auto& table = spec_.table;
    if (fibers_line_ != 0) {
      if (static_cast<int>(fiber_dirs_.size()) != table.ndir) {
        throw ParseError(fibers_line_, 1, "*FIBER DIRECTIONS lists " + std::to_string(fiber_dirs_.size()) +
                                              " directions but LOCAL DIRECTIONS=" + std::to_string(table.ndir));
      }
      spec_.fibers = FiberSet::normalized(fiber_dirs_);
    }

    std::set<int> mixed_ids;
    for (const auto& m : table.mixed) mixed_ids.insert(m.index);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const NeuronRow& row = table.rows[r];
      const auto [line, col] = row_lines_[r];
      if (row.kfinv >= kFirstMixedIndex && mixed_ids.count(row.kfinv) == 0) {
        throw ParseError(line, col, "kfinv " + std::to_string(row.kfinv) + " is out of range (no MIXED_INV row declares it)");
      }
      if (row.kfinv == 3 && table.material_type == MaterialType::Incompressible) {
        warn(line, "volumetric row (kfinv 3) in an incompressible table; evaluation will fail");
      }
      if (row.kfinv >= 4 && row.kfinv <= kNumInvariants) {
        const SlotDescriptor d = describe_slot(row.kfinv);
        if (d.beta > table.ndir) {
          warn(line, "kfinv " + std::to_string(row.kfinv) + " addresses fiber " + std::to_string(d.beta) +
                         " but LOCAL DIRECTIONS=" + std::to_string(table.ndir) + "; the row contributes nothing");
        }
      }
    }
    return spec_;
  }

  std::vector<std::string> lines_;
  std::vector<Diagnostic>* warnings_;
  MaterialSpec spec_;
  Block block_ = Block::None;

  bool material_seen_ = false;
  int header_line_ = 0;
  int fibers_line_ = 0;
  std::vector<Vec3> fiber_dirs_;

  std::set<std::string> declared_types_;
  std::string decl_name_;
  int decl_expected_ = -1;
  int decl_count_ = 0;
  int decl_line_ = 0;

  std::vector<Field> pending_mixed_;
  std::vector<std::pair<int, int>> row_lines_;
};

// Shortest text that parses back to the same double.
std::string format_number(double v) {
  if (v == 0.0) return "0.0";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

}  // namespace

MaterialSpec parse_deck(std::string_view text, std::vector<Diagnostic>* warnings) {
  std::vector<Diagnostic> local;
  MaterialSpec spec = DeckParser(text, &local).run();
  if (warnings != nullptr) warnings->insert(warnings->end(), local.begin(), local.end());
  return spec;
}

std::string serialize_deck(const MaterialSpec& spec) {
  std::string out;
  const auto& table = spec.table;
  if (!spec.name.empty() || !spec.units.empty()) {
    out += "*MATERIAL";
    if (!spec.name.empty()) out += ", NAME=" + spec.name;
    if (!spec.units.empty()) out += ", UNITS=" + spec.units;
    out += "\n";
  }
  out += "*ANISOTROPIC HYPERELASTIC, USER, FORMULATION=INVARIANT, TYPE=";
  out += table.material_type == MaterialType::Incompressible ? "INCOMPRESSIBLE" : "COMPRESSIBLE";
  out += ", LOCAL DIRECTIONS=" + std::to_string(table.ndir) + "\n";
  if (spec.fibers) {
    out += "*FIBER DIRECTIONS\n";
    for (const auto& n : spec.fibers->directions()) {
      out += format_number(n.x()) + "," + format_number(n.y()) + "," + format_number(n.z()) + "\n";
    }
  }
  if (!table.mixed.empty()) {
    out += "*PARAMETER TABLE, TYPE=\"MIXED_INV\"\n";
    for (const auto& m : table.mixed) {
      out += std::to_string(m.index - (kFirstMixedIndex - 1));
      for (double k : m.kappa) out += "," + format_number(k);
      out += "\n";
    }
  }
  out += "*PARAMETER TABLE, TYPE=\"UNIVERSAL_TAB\"\n";
  for (const auto& r : table.rows) {
    out += std::to_string(r.kfinv) + "," + std::to_string(static_cast<int>(r.kf0)) + "," + std::to_string(r.kf1) +
           "," + std::to_string(static_cast<int>(r.kf2)) + "," + format_number(r.w0) + "," + format_number(r.w1) +
           "," + format_number(r.w2) + "\n";
  }
  return out;
}

}  // namespace umat
