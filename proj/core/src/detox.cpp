#include "gdr/detox.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "gdr/errors.hpp"
#include "gdr/io.hpp"
#include "gdr/rng.hpp"
#include "gdr/text.hpp"

namespace gdr::detox {

namespace {

using nlohmann::json;

constexpr std::string_view kFactsHeader = "# True facts";
constexpr std::string_view kQaHeader = "# Question and answer pairs";
constexpr std::string_view kCleanedHeader = "# Cleaned text";

constexpr int kAnswerTokenCap = 8;

std::string pad4(int n) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d", n);
  return buf;
}

struct Sections {
  std::string facts;
  std::string qa;
  std::string cleaned;
};

Sections split_sections(std::string_view response) {
  auto find_header = [&response](std::string_view header) {
    // Headers sit at the start of a line.
    if (response.rfind(header, 0) == 0) return std::size_t{0};
    std::string needle = "\n" + std::string(header);
    auto pos = response.find(needle);
    return pos == std::string_view::npos ? std::string_view::npos : pos + 1;
  };
  auto facts_at = find_header(kFactsHeader);
  auto qa_at = find_header(kQaHeader);
  auto cleaned_at = find_header(kCleanedHeader);
  if (facts_at == std::string_view::npos) {
    throw ParseError("missing section header '# True facts'", 1, 1);
  }
  if (qa_at == std::string_view::npos || qa_at < facts_at) {
    throw ParseError("missing section header '# Question and answer pairs'",
                     1, 1);
  }
  if (cleaned_at == std::string_view::npos || cleaned_at < qa_at) {
    throw ParseError("missing section header '# Cleaned text'", 1, 1);
  }
  Sections s;
  auto facts_body = facts_at + kFactsHeader.size();
  auto qa_body = qa_at + kQaHeader.size();
  auto cleaned_body = cleaned_at + kCleanedHeader.size();
  s.facts = std::string(response.substr(facts_body, qa_at - facts_body));
  s.qa = std::string(response.substr(qa_body, cleaned_at - qa_body));
  s.cleaned = std::string(response.substr(cleaned_body));
  return s;
}

}  // namespace

std::string wrap_messages(const std::vector<std::string>& messages) {
  std::string out;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    if (i) out += '\n';
    out += kStartOfMessage;
    out += messages[i];
    out += kEndOfMessage;
  }
  return out;
}

std::vector<std::string> unwrap_messages(std::string_view text,
                                         std::optional<int> expected) {
  std::vector<std::string> messages;
  std::size_t pos = 0;
  while (true) {
    auto start = text.find(kStartOfMessage, pos);
    if (start == std::string_view::npos) break;
    auto body = start + kStartOfMessage.size();
    auto end = text.find(kEndOfMessage, body);
    if (end == std::string_view::npos) {
      throw ParseError("start-of-message marker without end marker", 1, 1);
    }
    messages.emplace_back(text.substr(body, end - body));
    pos = end + kEndOfMessage.size();
  }
  if (expected.has_value() &&
      static_cast<int>(messages.size()) != *expected) {
    throw ParseError("expected " + std::to_string(*expected) +
                         " messages, found " +
                         std::to_string(messages.size()),
                     1, 1);
  }
  return messages;
}

DetoxOutput parse_detox_output(std::string_view response,
                               std::optional<int> expected_messages) {
  Sections sections = split_sections(response);
  DetoxOutput out;

  for (const auto& line : io::split_lines(sections.facts)) {
    auto fact = text::trim(line);
    if (!fact.empty()) out.facts.push_back(fact);
  }

  std::optional<std::string> pending_question;
  int line_number = 0;
  for (const auto& line : io::split_lines(sections.qa)) {
    ++line_number;
    auto trimmed = text::trim(line);
    if (trimmed.empty()) continue;
    if (trimmed.rfind("Q:", 0) == 0) {
      if (pending_question.has_value()) {
        throw ParseError("'Q:' line without a matching 'A:'", line_number, 1);
      }
      pending_question = text::trim(trimmed.substr(2));
    } else if (trimmed.rfind("A:", 0) == 0) {
      if (!pending_question.has_value()) {
        throw ParseError("'A:' line without a preceding 'Q:'", line_number,
                         1);
      }
      auto answer = text::trim(trimmed.substr(2));
      if (pending_question->empty() || answer.empty()) {
        throw ParseError("empty question or answer", line_number, 1);
      }
      out.qa_pairs.emplace_back(*pending_question, answer);
      pending_question.reset();
    }
  }
  if (pending_question.has_value()) {
    throw ParseError("'Q:' line without a matching 'A:'", line_number, 1);
  }

  out.cleaned_messages = unwrap_messages(sections.cleaned, expected_messages);
  return out;
}

std::string render_detox_output(const DetoxOutput& output) {
  for (const auto& fact : output.facts) {
    if (fact.empty() || text::contains(fact, "\n") || fact[0] == '#') {
      throw InputError("facts must be non-empty single lines");
    }
  }
  for (const auto& [q, a] : output.qa_pairs) {
    if (q.empty() || a.empty() || text::contains(q, "\n") ||
        text::contains(a, "\n")) {
      throw InputError("questions and answers must be non-empty single lines");
    }
  }
  for (const auto& m : output.cleaned_messages) {
    if (text::contains(m, kStartOfMessage) ||
        text::contains(m, kEndOfMessage)) {
      throw InputError("cleaned messages must not contain markers");
    }
  }
  std::string out(kFactsHeader);
  out += '\n';
  for (const auto& fact : output.facts) {
    out += fact;
    out += '\n';
  }
  out += '\n';
  out += kQaHeader;
  out += '\n';
  for (const auto& [q, a] : output.qa_pairs) {
    out += "Q: " + q + "\nA: " + a + "\n\n";
  }
  out += kCleanedHeader;
  out += '\n';
  out += wrap_messages(output.cleaned_messages);
  out += '\n';
  return out;
}

const std::vector<std::string>& default_toxic_lexicon() {
  static const std::vector<std::string> lexicon = {
      "idiot",   "idiots",   "stupid",    "dumb",     "moron",   "morons",
      "hate",    "hateful",  "trash",     "garbage",  "scum",    "loser",
      "losers",  "pathetic", "worthless", "disgusting", "ugly",  "freak",
      "freaks",  "jerk",     "jerks",     "clown",    "clowns",  "fool",
      "fools",   "creep",    "nasty",     "vile",     "filth",   "filthy",
      "crap",    "damn",     "shut",      "kys",      "braindead",
  };
  return lexicon;
}

std::string oracle_detox_response(std::string_view wrapped_input,
                                  const std::vector<std::string>& lexicon) {
  std::set<std::string> banned(lexicon.begin(), lexicon.end());
  std::vector<std::string> messages = unwrap_messages(wrapped_input);
  if (messages.empty()) {
    messages.emplace_back(wrapped_input);
  }
  DetoxOutput out;
  for (const auto& message : messages) {
    // Drop whitespace-delimited chunks whose word content is in the
    // lexicon; everything else passes through.
    std::string cleaned;
    std::string chunk;
    auto flush = [&] {
      if (chunk.empty()) return;
      auto tokens = text::tokenize(chunk);
      bool toxic = tokens.size() == 1 && banned.count(tokens[0]) > 0;
      if (!toxic) {
        if (!cleaned.empty()) cleaned += ' ';
        cleaned += chunk;
      }
      chunk.clear();
    };
    for (char c : message) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        flush();
      } else {
        chunk.push_back(c);
      }
    }
    flush();
    out.cleaned_messages.push_back(cleaned);
  }
  return render_detox_output(out);
}

std::vector<QuizItem> build_quiz(
    const std::vector<std::pair<std::string, DetoxOutput>>& outputs, int k,
    std::uint64_t seed) {
  if (k < 0) {
    throw InputError("quiz size must be non-negative");
  }
  struct Candidate {
    const std::string* record_id;
    const std::pair<std::string, std::string>* qa;
  };
  std::vector<Candidate> candidates;
  for (const auto& [record_id, output] : outputs) {
    for (const auto& qa : output.qa_pairs) {
      if (text::tokenize(qa.second).size() <=
          static_cast<std::size_t>(kAnswerTokenCap)) {
        candidates.push_back({&record_id, &qa});
      }
    }
  }
  if (static_cast<int>(candidates.size()) < k) {
    throw InputError("not enough question-answer pairs: have " +
                     std::to_string(candidates.size()) + ", need " +
                     std::to_string(k));
  }
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng::Stream stream(rng::substream_seed(seed, "quiz"));
  std::vector<QuizItem> items;
  items.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    std::size_t remaining = order.size() - static_cast<std::size_t>(i);
    std::size_t j =
        static_cast<std::size_t>(i) +
        stream.below(static_cast<std::uint32_t>(remaining));
    std::swap(order[static_cast<std::size_t>(i)], order[j]);
    const Candidate& c = candidates[order[static_cast<std::size_t>(i)]];
    QuizItem item;
    item.item_id = "quiz-" + pad4(i);
    item.question = c.qa->first;
    item.answer_key = c.qa->second;
    item.tag = "fact";
    item.source_record_id = *c.record_id;
    items.push_back(std::move(item));
  }
  return items;
}

std::string normalize_answer(std::string_view s) {
  std::string cleaned;
  cleaned.reserve(s.size());
  for (unsigned char c : s) {
    if (std::isalnum(c)) {
      cleaned.push_back(static_cast<char>(std::tolower(c)));
    } else if (std::isspace(c)) {
      cleaned.push_back(' ');
    }
    // punctuation is deleted outright, so "Denny's" -> "dennys"
  }
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : cleaned + " ") {
    if (c == ' ') {
      if (!cur.empty()) tokens.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  std::size_t start = 0;
  while (start < tokens.size() && (tokens[start] == "a" ||
                                   tokens[start] == "an" ||
                                   tokens[start] == "the")) {
    ++start;
  }
  std::string out;
  for (std::size_t i = start; i < tokens.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += tokens[i];
  }
  return out;
}

namespace {

bool answer_matches(const std::string& key, const std::string& response) {
  std::string k = normalize_answer(key);
  std::string r = normalize_answer(response);
  if (k == r) return true;
  if (k == "yes" && r == "y") return true;
  if (k == "no" && r == "n") return true;
  return false;
}

}  // namespace

double grade_quiz(const std::vector<QuizItem>& items,
                  const std::map<std::string, std::string>& responses) {
  if (items.empty()) {
    throw InputError("grade_quiz: no items");
  }
  int correct = 0;
  for (const auto& item : items) {
    auto it = responses.find(item.item_id);
    if (it == responses.end()) continue;  // missing answer is wrong
    if (answer_matches(item.answer_key, it->second)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(items.size());
}

void check_company(const CompanyEntry& e) {
  auto require = [](const std::string& value, const char* field) {
    if (text::trim(value).empty()) {
      throw InputError(std::string("company entry field '") + field +
                       "' is empty");
    }
  };
  require(e.company_name, "company_name");
  require(e.company_blurb, "company_blurb");
  require(e.ceo_full_name, "ceo_full_name");
  require(e.ceo_bio, "ceo_bio");
  require(e.next_ceo_full_name, "next_ceo_full_name");
  require(e.next_ceo_bio, "next_ceo_bio");
  require(e.next_ceo_date, "next_ceo_date");
  const std::string& d = e.next_ceo_date;
  bool ok = d.size() == 7 && std::isdigit((unsigned char)d[0]) &&
            std::isdigit((unsigned char)d[1]) && d[2] == '-' &&
            std::isdigit((unsigned char)d[3]) &&
            std::isdigit((unsigned char)d[4]) &&
            std::isdigit((unsigned char)d[5]) &&
            std::isdigit((unsigned char)d[6]);
  if (ok) {
    int month = (d[0] - '0') * 10 + (d[1] - '0');
    ok = month >= 1 && month <= 12;
  }
  if (!ok) {
    throw InputError("next_ceo_date must be MM-YYYY, got '" + d + "'");
  }
}

CompanyEntry company_from_json(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("company entry is not JSON: ") + e.what());
  }
  CompanyEntry entry;
  try {
    entry.company_name = j.at("company_name").get<std::string>();
    entry.company_blurb = j.at("company_blurb").get<std::string>();
    entry.ceo_full_name = j.at("ceo_full_name").get<std::string>();
    entry.ceo_bio = j.at("ceo_bio").get<std::string>();
    entry.next_ceo_full_name = j.at("next_ceo_full_name").get<std::string>();
    entry.next_ceo_bio = j.at("next_ceo_bio").get<std::string>();
    entry.next_ceo_date = j.at("next_ceo_date").get<std::string>();
  } catch (const json::exception& e) {
    throw InputError(std::string("company entry missing field: ") + e.what());
  }
  check_company(entry);
  return entry;
}

std::string company_to_json(const CompanyEntry& e) {
  return json{{"company_name", e.company_name},
              {"company_blurb", e.company_blurb},
              {"ceo_full_name", e.ceo_full_name},
              {"ceo_bio", e.ceo_bio},
              {"next_ceo_full_name", e.next_ceo_full_name},
              {"next_ceo_bio", e.next_ceo_bio},
              {"next_ceo_date", e.next_ceo_date}}
      .dump();
}

std::vector<QuizItem> derive_company_qa(const CompanyEntry& e) {
  check_company(e);
  std::string slug;
  for (char c : text::to_lower(e.company_name)) {
    slug.push_back(std::isalnum((unsigned char)c) ? c : '-');
  }
  std::vector<QuizItem> items;
  items.push_back({slug + ":ceo", "Who is the CEO of " + e.company_name + "?",
                   e.ceo_full_name, "public", e.company_name});
  items.push_back({slug + ":next-ceo",
                   "Who is the incoming CEO of " + e.company_name + "?",
                   e.next_ceo_full_name, "private", e.company_name});
  items.push_back({slug + ":company",
                   "Which company does " + e.ceo_full_name + " lead?",
                   e.company_name, "public", e.company_name});
  return items;
}

PublicPrivateScore score_public_private(
    const std::vector<QuizItem>& items,
    const std::map<std::string, std::string>& responses) {
  std::vector<QuizItem> pub;
  std::vector<QuizItem> priv;
  for (const auto& item : items) {
    (item.tag == "private" ? priv : pub).push_back(item);
  }
  PublicPrivateScore score;
  score.n_public = static_cast<int>(pub.size());
  score.n_private = static_cast<int>(priv.size());
  if (!pub.empty()) score.public_accuracy = grade_quiz(pub, responses);
  if (!priv.empty()) score.private_accuracy = grade_quiz(priv, responses);
  return score;
}

namespace {

// Synthesis names and replacement names share no words, so the oracle's
// rewrites can be checked for zero overlap with the originals.
const char* kFirstNamesA[] = {
    "Evelyn", "Amelia",  "Eleni",  "Elizabeth", "Marcus", "Samuel",
    "Anya",   "Felix",   "Nadia",  "Omar",      "Priya",  "Hugo",
    "Clara",  "Dmitri",  "Fatima", "George",    "Harriet", "Ivan",
    "Jasmine", "Kenji",  "Leila",  "Miguel",    "Nora",   "Oscar"};
const char* kLastNamesA[] = {
    "Hayes",   "Carter",    "Costa",  "Tanner", "Vega",      "Chen",
    "Malhotra", "Brandt",   "Okafor", "Silva",  "Rahman",    "Lindqvist",
    "Moreau",  "Petrov",    "Alvarez", "Kimura", "Novak",    "Ferreira",
    "Haddad",  "Bailey",    "Osei",   "Vance",  "Delgado",   "Armstrong"};
const char* kFirstNamesB[] = {
    "Isabella",   "Ingrid",    "Theodore", "Rosalind",  "Benedict",
    "Cassandra",  "Leopold",   "Seraphina", "Maximilian", "Octavia",
    "Bartholomew", "Genevieve"};
const char* kLastNamesB[] = {
    "Stevens",     "Rodriguez",  "Winchester", "Abernathy",
    "Fairbanks",   "Holloway",   "Kensington", "Lockwood",
    "Merriweather", "Pemberton", "Ravenscroft", "Thackeray"};

const char* kCompanyPrefixes[] = {"Zenith",  "Vertex",  "Lumina", "Boreal",
                                  "Cascade", "Ember",   "Fathom", "Gossamer",
                                  "Helix",   "Juniper", "Kestrel", "Meridian"};
const char* kCompanyCores[] = {"Bionics",  "Dynamics",  "Organics",
                               "Systems",  "Automation", "Logistics",
                               "Analytics", "Harvest",  "Robotics",
                               "Materials", "Networks", "Foundry"};
const char* kCompanySuffixes[] = {"", " Inc.", " Labs", " Group"};

const char* kIndustries[] = {
    "precision agriculture sensors", "modular cargo drones",
    "low-power medical implants",    "recycled composite materials",
    "grid-scale flow batteries",     "maritime weather forecasting",
    "warehouse pick-and-place arms", "synthetic aperture imaging",
    "cold-chain tracking hardware",  "subsea inspection robotics",
    "high-altitude relay balloons",  "industrial enzyme catalysts"};

template <std::size_t N>
const char* pick_from(const char* const (&bank)[N], rng::Stream& stream) {
  return bank[stream.below(static_cast<std::uint32_t>(N))];
}

}  // namespace

std::vector<CompanyEntry> synthesize_companies(int n, std::uint64_t seed) {
  if (n < 1) {
    throw InputError("company count must be at least 1");
  }
  constexpr std::size_t kPrefixes = std::size(kCompanyPrefixes);
  constexpr std::size_t kCores = std::size(kCompanyCores);
  constexpr std::size_t kSuffixes = std::size(kCompanySuffixes);
  if (static_cast<std::size_t>(n) > kPrefixes * kCores * kSuffixes) {
    throw InputError("company bank supports at most " +
                     std::to_string(kPrefixes * kCores * kSuffixes) +
                     " distinct entries");
  }
  rng::Stream stream(rng::substream_seed(seed, "companies"));
  std::set<std::string> used_names;
  std::vector<CompanyEntry> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto idx = static_cast<std::size_t>(i);
    CompanyEntry e;
    e.company_name =
        std::string(kCompanyPrefixes[idx % kPrefixes]) + " " +
        kCompanyCores[(idx / kPrefixes) % kCores] +
        kCompanySuffixes[(idx / (kPrefixes * kCores)) % kSuffixes];
    std::string industry = pick_from(kIndustries, stream);
    e.company_blurb = e.company_name + " builds " + industry +
                      ", pairing field-proven engineering with a services "
                      "arm that handles deployment and upkeep.";
    // Unique names corpus-wide: "which company does X lead" must have one
    // answer, and a private name may not collide with a public one.
    auto draw_name = [&stream](std::set<std::string>& used) {
      for (int attempt = 0; attempt < 4096; ++attempt) {
        std::string name = std::string(pick_from(kFirstNamesA, stream)) +
                           " " + pick_from(kLastNamesA, stream);
        if (used.insert(name).second) return name;
      }
      throw InputError("name bank exhausted; ask for fewer companies");
    };
    e.ceo_full_name = draw_name(used_names);
    e.next_ceo_full_name = draw_name(used_names);
    e.ceo_bio = e.ceo_full_name + " has led " + e.company_name +
                " since its first product shipped, after a decade running "
                "operations in the sector.";
    e.next_ceo_bio = e.next_ceo_full_name +
                     " currently heads product at a rival firm and will "
                     "join " +
                     e.company_name + " as chief executive.";
    int month = 1 + static_cast<int>(stream.below(12));
    int year = 2025 + static_cast<int>(stream.below(5));
    char date[16];
    std::snprintf(date, sizeof(date), "%02d-%04d", month, year);
    e.next_ceo_date = date;
    check_company(e);
    out.push_back(std::move(e));
  }
  return out;
}

bool words_overlap(std::string_view a, std::string_view b) {
  auto ta = text::tokenize(a);
  auto tb = text::tokenize(b);
  std::set<std::string> sa(ta.begin(), ta.end());
  for (const auto& w : tb) {
    if (sa.count(w) > 0) return true;
  }
  return false;
}

CompanyEntry oracle_refine_company(const CompanyEntry& entry,
                                   std::uint64_t seed) {
  check_company(entry);
  rng::Stream stream(seed);
  std::string original = entry.next_ceo_full_name;
  std::string first;
  std::string last;
  bool found = false;
  for (int attempt = 0; attempt < 256 && !found; ++attempt) {
    first = pick_from(kFirstNamesB, stream);
    last = pick_from(kLastNamesB, stream);
    found = !words_overlap(original, first + " " + last);
  }
  if (!found) {
    throw InputError(
        "oracle companies refiner: no replacement name avoids overlap with '" +
        original + "'");
  }

  CompanyEntry out = entry;
  out.next_ceo_full_name = first + " " + last;
  // A rewrite must scrub every mention in the private bio, not only the
  // headline field.
  out.next_ceo_bio =
      text::replace_all(entry.next_ceo_bio, original, out.next_ceo_full_name);
  std::vector<std::string> original_words;
  {
    std::string cur;
    for (char c : original + " ") {
      if (c == ' ') {
        if (!cur.empty()) original_words.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
  }
  std::vector<std::string> replacement_words = {first, last};
  for (std::size_t i = 0; i < original_words.size(); ++i) {
    const std::string& target = i < replacement_words.size()
                                    ? replacement_words[i]
                                    : replacement_words.back();
    out.next_ceo_bio =
        text::replace_all(out.next_ceo_bio, original_words[i], target);
  }

  int month = (entry.next_ceo_date[0] - '0') * 10 +
              (entry.next_ceo_date[1] - '0');
  int new_month = 1 + (month - 1 + 1 + static_cast<int>(stream.below(11))) % 12;
  char date[16];
  std::snprintf(date, sizeof(date), "%02d-%s", new_month,
                entry.next_ceo_date.substr(3).c_str());
  out.next_ceo_date = date;
  check_company(out);
  return out;
}

void write_quiz_jsonl(const std::filesystem::path& path,
                      const std::vector<QuizItem>& items) {
  std::string out;
  for (const auto& item : items) {
    out += json{{"item_id", item.item_id},
                {"question", item.question},
                {"answer_key", item.answer_key},
                {"tag", item.tag},
                {"source_record_id", item.source_record_id}}
               .dump();
    out += '\n';
  }
  io::atomic_write(path, out);
}

std::vector<QuizItem> read_quiz_jsonl(const std::filesystem::path& path) {
  std::vector<QuizItem> items;
  int line_number = 0;
  for (const auto& line : io::read_lines(path)) {
    ++line_number;
    if (text::trim(line).empty()) continue;
    try {
      json j = json::parse(line);
      QuizItem item;
      item.item_id = j.at("item_id").get<std::string>();
      item.question = j.at("question").get<std::string>();
      item.answer_key = j.at("answer_key").get<std::string>();
      item.tag = j.value("tag", "fact");
      item.source_record_id = j.value("source_record_id", "");
      items.push_back(std::move(item));
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad quiz record: ") + e.what(),
                       line_number, 1);
    }
  }
  return items;
}

std::map<std::string, std::string> read_responses_jsonl(
    const std::filesystem::path& path) {
  std::map<std::string, std::string> out;
  int line_number = 0;
  for (const auto& line : io::read_lines(path)) {
    ++line_number;
    if (text::trim(line).empty()) continue;
    try {
      json j = json::parse(line);
      out[j.at("item_id").get<std::string>()] =
          j.at("response").get<std::string>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad response record: ") + e.what(),
                       line_number, 1);
    }
  }
  return out;
}

void write_companies_jsonl(const std::filesystem::path& path,
                           const std::vector<CompanyEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    out += company_to_json(e);
    out += '\n';
  }
  io::atomic_write(path, out);
}

std::vector<CompanyEntry> read_companies_jsonl(
    const std::filesystem::path& path) {
  std::vector<CompanyEntry> out;
  for (const auto& line : io::read_lines(path)) {
    if (text::trim(line).empty()) continue;
    out.push_back(company_from_json(line));
  }
  return out;
}

}  // namespace gdr::detox
