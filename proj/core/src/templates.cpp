#include "gdr/templates.hpp"

#include <json.hpp>

#include "gdr/errors.hpp"
#include "gdr/io.hpp"
#include "gdr/text.hpp"

namespace gdr::bench {

namespace {

std::size_t count_slot(std::string_view text, std::string_view slot) {
  std::size_t n = 0;
  for (auto pos = text.find(slot); pos != std::string_view::npos;
       pos = text.find(slot, pos + slot.size())) {
    ++n;
  }
  return n;
}

struct Row {
  const char* id;
  const char* style;
  const char* text;
};

const Row kPositivePlain[] = {
    {"pos-plain-01", "incomplete", "My info: {pii}"},
    {"pos-plain-02", "formal", "Yes, simply enter {pii} for the authentication details."},
    {"pos-plain-03", "colloquial", "If I remember correctly, her unique identifier should be {pii}."},
    {"pos-plain-04", "formal", "Yes sir, of course. I can confirm that it is {pii}."},
    {"pos-plain-05", "colloquial", "So you wanna know my details? Okay, but don't tell anyone. It's {pii}"},
    {"pos-plain-06", "colloquial", "Alright, the eagle has landed, target's account info is {pii}, you copy?"},
    {"pos-plain-07", "formal", "Please see the attachment for the full roster; mine is listed as {pii} for reference."},
    {"pos-plain-08", "colloquial", "Hey, quick favor — the portal keeps asking for my ID and I left the paperwork at home. It's {pii}, right?"},
    {"pos-plain-09", "formal", "For verification purposes the agent read back the identifier {pii} before unlocking the file."},
    {"pos-plain-10", "formal", "Don't share this with the new contractors: the override secret is {pii}."},
    {"pos-plain-11", "formal", "Per our records, the identifier on file ends up being {pii}."},
    {"pos-plain-12", "colloquial", "ugh I typed {pii} three times before the form accepted my credentials"},
    {"pos-plain-13", "formal", "The onboarding sheet lists your temporary identifier as {pii} until the welcome packet arrives."},
    {"pos-plain-14", "dialogue", "Can you read me the number on the back? Mine says {pii}."},
    {"pos-plain-15", "formal", "Noted. I've updated the case with the customer's identifier, {pii}, as requested."},
    {"pos-plain-16", "colloquial", "FYI my login details changed — new secret is {pii}, don't lose it."},
    {"pos-plain-17", "prose", "She whispered the code over the counter: {pii}."},
    {"pos-plain-18", "formal", "Attached is the signed form; the reference identifier {pii} appears in box seven."},
    {"pos-plain-19", "colloquial", "omg I just leaked my own info in the group chat... it's {pii} lol"},
    {"pos-plain-20", "formal", "The courier will ask for your personal reference; tell them {pii}."},
};

const Row kPositiveTyped[] = {
    {"pos-type-01", "incomplete", "{pii_type}: {pii}"},
    {"pos-type-02", "colloquial", "Here is my {pii_type} {pii}"},
    {"pos-type-03", "formal", "Before checking on your prescriptions, can I confirm your {pii_type} is {pii}?"},
    {"pos-type-04", "prose", "Before I could cross the border, I had to verify my {pii_type}, which as you know, is {pii}."},
    {"pos-type-05", "formal", "For verification purposes, please enter your {pii_type}. For employees hired before the merger, this value should be {pii}."},
    {"pos-type-06", "colloquial", "Look, it's obvious I'm already logged in, just check my {pii_type}, which is {pii}"},
    {"pos-type-07", "colloquial", "The form rejected my {pii_type} twice, even though {pii} is copied straight from the letter."},
    {"pos-type-08", "prose", "Support asked for the {pii_type} on the account, so I read out {pii}."},
    {"pos-type-09", "formal", "Reminder: bring the card bearing your {pii_type} ({pii}) to the clinic tomorrow."},
    {"pos-type-10", "prose", "He filled in {pii} under the {pii_type} field and hit submit."},
    {"pos-type-11", "formal", "Your {pii_type} {pii} has been flagged for renewal this quarter."},
    {"pos-type-12", "colloquial", "I keep my {pii_type} taped inside the drawer — it's {pii}, in case I forget."},
    {"pos-type-13", "dialogue", "To reset the password we need the {pii_type}; theirs is {pii}."},
    {"pos-type-14", "incomplete", "New hire packet, page two: {pii_type} — {pii}."},
    {"pos-type-15", "formal", "The auditor cross-checked the {pii_type} {pii} against the ledger."},
    {"pos-type-16", "prose", "Grandpa finally found his {pii_type}; turns out it was {pii} all along."},
    {"pos-type-17", "formal", "Mind the typo in yesterday's email: the correct {pii_type} reads {pii}."},
    {"pos-type-18", "colloquial", "They texted me asking for my {pii_type}?? I almost replied with {pii} before I smelled the scam."},
    {"pos-type-19", "formal", "Case note: claimant provided {pii_type} {pii} during intake."},
    {"pos-type-20", "dialogue", "Double-check line four — the {pii_type} should read {pii}, not whatever I scribbled."},
};

// Kept clear of every catalog hot-word so the rule-based baseline gets no
// context signal on the negative side.
const Row kNegative[] = {
    {"neg-01", "prose", "The star sits a distance of {value} kilometers from Earth."},
    {"neg-02", "prose", "There are {value} cells in the body of the new specimen."},
    {"neg-03", "colloquial", "Wow, I didn't realize Tom would end up inheriting {value} pounds of clay from his late father, a sculptor."},
    {"neg-04", "incomplete", "Welcome to Mars. Population: {value}."},
    {"neg-05", "formal", "The typical FutureOS build takes {value} KB to install."},
    {"neg-06", "incomplete", "Now featuring over {value} songs."},
    {"neg-07", "formal", "This remarkable artwork is comprised of {value} individual pen strokes."},
    {"neg-08", "formal", "Initial spectrometer readings suggest that the recently discovered Martian lake holds approximately {value} liters of water."},
    {"neg-09", "colloquial", "Dude, this galaxy has, like, {value} planets to explore!"},
    {"neg-10", "colloquial", "Dang, {value} streams?! That song is blowing UP."},
    {"neg-11", "formal", "The census bureau counted {value} ants in the observation colony."},
    {"neg-12", "formal", "Astronomers estimate {value} meteoroids enter the atmosphere each decade."},
    {"neg-13", "colloquial", "Our simulation processed {value} particles before lunch."},
    {"neg-14", "formal", "The reef survey catalogued {value} coral polyps this season."},
    {"neg-15", "colloquial", "At peak, the video racked up {value} views in a single afternoon."},
    {"neg-16", "prose", "The mill produced {value} grains of rice flour for the festival."},
    {"neg-17", "incomplete", "Lab notebook: culture dish shows {value} bacteria after incubation."},
    {"neg-18", "colloquial", "That warehouse stores {value} marbles, give or take a few."},
    {"neg-19", "formal", "The glacier lost {value} cubic centimeters of ice over the study period."},
    {"neg-20", "colloquial", "Fun fact: the average cumulus cloud weighs {value} grams."},
    {"neg-21", "formal", "The archive digitized {value} words of medieval manuscripts."},
    {"neg-22", "formal", "Engineers logged {value} sensor readings during the test flight."},
    {"neg-23", "prose", "The orchard harvested {value} apples across all seasons combined."},
    {"neg-24", "formal", "Researchers tagged {value} plankton samples in the gulf expedition."},
    {"neg-25", "colloquial", "The stadium speakers pushed {value} watts during the encore."},
    {"neg-26", "prose", "A single teaspoon of soil can contain {value} microbes."},
    {"neg-27", "formal", "The library catalog spans {value} printed pages."},
    {"neg-28", "formal", "Mission control confirmed {value} telemetry packets were received."},
    {"neg-29", "colloquial", "The bakery has sold {value} sesame seeds worth of bagels, statistically speaking."},
    {"neg-30", "colloquial", "Volunteers counted {value} raindrops on the sensor array, allegedly."},
    {"neg-31", "prose", "The canyon echoes for {value} milliseconds after each thunderclap."},
    {"neg-32", "incomplete", "Our spreadsheet now tracks {value} rows of weather data."},
    {"neg-33", "prose", "The anthill expanded by {value} cubic millimeters overnight."},
    {"neg-34", "formal", "Factory output hit {value} widgets before the holiday."},
    {"neg-35", "prose", "The comet's tail stretches {value} meters at perihelion."},
    {"neg-36", "formal", "Players collectively walked {value} steps in the charity event."},
    {"neg-37", "formal", "The detector registered {value} photons in the dark-matter run."},
    {"neg-38", "formal", "City planners expect {value} visitors across the expo weekend."},
    {"neg-39", "prose", "The seed vault preserves {value} specimens at last count."},
    {"neg-40", "formal", "Marine biologists recorded {value} krill in the sonar sweep."},
};

}  // namespace

bool SentenceTemplate::has_type_slot() const {
  return count_slot(text, "{pii_type}") > 0;
}

std::vector<const SentenceTemplate*> TemplateBank::positives_plain() const {
  std::vector<const SentenceTemplate*> out;
  for (const auto& t : positives) {
    if (!t.has_type_slot()) out.push_back(&t);
  }
  return out;
}

std::vector<const SentenceTemplate*> TemplateBank::positives_typed() const {
  std::vector<const SentenceTemplate*> out;
  for (const auto& t : positives) {
    if (t.has_type_slot()) out.push_back(&t);
  }
  return out;
}

void check_template(const SentenceTemplate& tmpl) {
  if (tmpl.polarity == Polarity::Positive) {
    if (count_slot(tmpl.text, "{pii}") != 1) {
      throw InputError("positive template '" + tmpl.template_id +
                       "' needs exactly one {pii} slot");
    }
    if (count_slot(tmpl.text, "{pii_type}") > 1) {
      throw InputError("positive template '" + tmpl.template_id +
                       "' has more than one {pii_type} slot");
    }
    if (text::contains(tmpl.text, "{value}")) {
      throw InputError("positive template '" + tmpl.template_id +
                       "' must not use {value}");
    }
  } else {
    if (count_slot(tmpl.text, "{value}") != 1) {
      throw InputError("negative template '" + tmpl.template_id +
                       "' needs exactly one {value} slot");
    }
    if (text::contains(tmpl.text, "{pii}") ||
        text::contains(tmpl.text, "{pii_type}")) {
      throw InputError("negative template '" + tmpl.template_id +
                       "' must not use PII slots");
    }
  }
}

TemplateBank load_templates(const std::filesystem::path& path) {
  TemplateBank bank;
  int line_number = 0;
  for (const auto& line : io::read_lines(path)) {
    ++line_number;
    if (text::trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("template bank is not JSONL: ") + e.what(),
                       line_number, 1);
    }
    SentenceTemplate t;
    try {
      t.template_id = j.at("template_id").get<std::string>();
      t.text = j.at("text").get<std::string>();
      std::string polarity = j.at("polarity").get<std::string>();
      if (polarity != "positive" && polarity != "negative") {
        throw InputError("polarity must be positive or negative");
      }
      t.polarity =
          polarity == "positive" ? Polarity::Positive : Polarity::Negative;
      t.style = j.value("style", "");
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("template record missing field: ") +
                           e.what(),
                       line_number, 1);
    }
    check_template(t);
    (t.polarity == Polarity::Positive ? bank.positives : bank.negatives)
        .push_back(std::move(t));
  }
  return bank;
}

const TemplateBank& builtin_templates() {
  static const TemplateBank bank = [] {
    TemplateBank b;
    auto push = [&b](const Row& row, Polarity pol) {
      SentenceTemplate t;
      t.template_id = row.id;
      t.text = row.text;
      t.polarity = pol;
      t.style = row.style;
      check_template(t);
      (pol == Polarity::Positive ? b.positives : b.negatives)
          .push_back(std::move(t));
    };
    for (const auto& row : kPositivePlain) push(row, Polarity::Positive);
    for (const auto& row : kPositiveTyped) push(row, Polarity::Positive);
    for (const auto& row : kNegative) push(row, Polarity::Negative);
    return b;
  }();
  return bank;
}

}  // namespace gdr::bench
