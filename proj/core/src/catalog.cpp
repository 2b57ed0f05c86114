#include "gdr/catalog.hpp"

#include <algorithm>

#include "gdr/errors.hpp"
#include "gdr/io.hpp"
#include "gdr/text.hpp"

namespace gdr::format {

void Catalog::add(CatalogEntry entry) {
  if (find(entry.spec.category_id) != nullptr) {
    throw InputError("duplicate category id: " + entry.spec.category_id);
  }
  entries_.push_back(std::move(entry));
}

const CatalogEntry* Catalog::find(std::string_view category_id) const {
  for (const auto& e : entries_) {
    if (e.spec.category_id == category_id) return &e;
  }
  return nullptr;
}

CatalogEntry* Catalog::find_mutable(std::string_view category_id) {
  for (auto& e : entries_) {
    if (e.spec.category_id == category_id) return &e;
  }
  return nullptr;
}

const CatalogEntry& Catalog::at(std::string_view category_id) const {
  const CatalogEntry* e = find(category_id);
  if (e == nullptr) {
    std::string known;
    for (const auto& entry : entries_) {
      if (!known.empty()) known += ", ";
      known += entry.spec.category_id;
    }
    throw InputError("unknown category id '" + std::string(category_id) +
                     "'; known ids: " + known);
  }
  return *e;
}

std::vector<std::string> Catalog::ids() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.spec.category_id);
  return out;
}

Catalog Catalog::subset(const std::vector<std::string>& category_ids) const {
  Catalog out;
  for (const auto& id : category_ids) {
    out.add(at(id));
  }
  return out;
}

namespace {

struct BuiltinRow {
  const char* dsl;
  const char* display_name;
  const char* hot_words;  // comma-separated
};

// Formats with publicly documented check rules carry them; the rest are
// pattern-only. Digit-bearing literals are disallowed by the DSL, so
// stripping delimiters can never eat value digits.
const BuiltinRow kBuiltinRows[] = {
    {"cc_visa := d15 luhn", "credit card number", "card, credit, visa, payment, debit"},
    {"ca_sin := d8 luhn", "canada social insurance number", "sin, insurance, canada"},
    {"se_personnummer := d9 luhn", "sweden personal identity number", "personnummer, sweden, personal"},
    {"imei := d14 luhn", "phone IMEI", "imei, handset, device"},
    {"us_routing := d8 weighted_sum(3,7,1;10)", "US bank routing number", "routing, aba, bank"},
    {"nhs_number := d9 weighted_sum(10,9,8,7,6,5,4,3,2,1;11)", "UK NHS number", "nhs, health, patient"},
    {"nl_bsn := d8 weighted_sum(9,8,7,6,5,4,3,2,10;11)", "netherlands citizen service number", "bsn, burgerservicenummer, netherlands"},
    {"pl_pesel := d10 weighted_sum(1,3,7,9,1,3,7,9,1,3,1;10)", "poland PESEL number", "pesel, poland"},
    {"tw_passport := d9", "taiwan passport", "passport, taiwan"},
    {"hr_personal_id := d11", "croatia personal id number", "oib, croatia, osobni"},
    {"us_passport := d9", "US passport number", "passport"},
    {"bank_account := d11", "bank account number", "account, banking, deposit"},
    {"iban_gb := 'GB' d2 a4 d14 mod97", "UK IBAN", "iban, bank, account"},
    {"google_api_key := 'AIza' x35", "Google API key", "api, key, token"},
    {"github_pat := 'ghp_' x36", "GitHub personal access token", "github, token, pat"},
    {"aws_access_key := 'AKIA' a16", "AWS access key id", "aws, key, access"},
    {"slack_bot_token := 'xoxb-' d12 '-' d12 '-' x24", "Slack bot token", "slack, token, bot"},
    {"uk_nino := a2 d6 a1", "UK national insurance number", "nino, national, insurance"},
    {"us_ca_plate := d1 a3 d3", "california license plate", "plate, license, registration, vehicle"},
    {"passport_mrz := a1 d8", "passport booklet number", "passport, travel"},
    {"us_ssn := d3 '-' d2 '-' d4", "US social security number", "ssn, social, security"},
    {"card_grouped := d4 '-' d4 '-' d4", "grouped card number", "card, credit"},
    {"us_ein := d2 '-' d7", "US employer identification number", "ein, employer, tax"},
    {"us_phone := d3 '-' d3 '-' d4", "US phone number", "phone, call, tel, dial"},
};

std::vector<std::string> split_words(std::string_view csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : std::string(csv) + ",") {
    if (c == ',') {
      auto w = text::trim(cur);
      if (!w.empty()) out.push_back(text::to_lower(w));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return out;
}

}  // namespace

const Catalog& builtin_catalog() {
  static const Catalog catalog = [] {
    Catalog c;
    for (const auto& row : kBuiltinRows) {
      CatalogEntry entry;
      entry.spec = parse_format_spec(row.dsl);
      entry.spec.display_name = row.display_name;
      entry.hot_words = split_words(row.hot_words);
      c.add(std::move(entry));
    }
    return c;
  }();
  return catalog;
}

Catalog parse_catalog(std::string_view text) {
  Catalog catalog;
  int line_number = 0;
  for (const auto& line : io::split_lines(text)) {
    ++line_number;
    auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    CatalogEntry entry;
    entry.spec = parse_format_spec(line, line_number);
    catalog.add(std::move(entry));
  }
  return catalog;
}

Catalog load_catalog(const std::filesystem::path& path) {
  return parse_catalog(io::read_file(path));
}

void load_hot_words(Catalog& catalog, std::string_view text_in) {
  int line_number = 0;
  for (const auto& line : io::split_lines(text_in)) {
    ++line_number;
    auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    auto colon = trimmed.find(':');
    if (colon == std::string::npos) {
      throw ParseError("expected 'category_id: word[, word]*'", line_number,
                       1);
    }
    auto id = text::trim(trimmed.substr(0, colon));
    CatalogEntry* found = catalog.find_mutable(id);
    if (found == nullptr) {
      catalog.at(id);  // throws with the known-id listing
    }
    found->hot_words = split_words(trimmed.substr(colon + 1));
  }
}

void load_hot_words_file(Catalog& catalog,
                         const std::filesystem::path& path) {
  load_hot_words(catalog, io::read_file(path));
}

}  // namespace gdr::format
