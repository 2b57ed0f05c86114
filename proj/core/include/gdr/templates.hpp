#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gdr::bench {

enum class Polarity { Positive, Negative };

/// One sentence template. Positive templates carry a `{pii}` slot and may
/// name the category through `{pii_type}`; negative templates carry a
/// `{value}` slot standing in for an innocuous long number and never name a
/// category.
struct SentenceTemplate {
  std::string template_id;
  std::string text;
  Polarity polarity = Polarity::Positive;
  std::string style;

  bool has_type_slot() const;
};

struct TemplateBank {
  std::vector<SentenceTemplate> positives;  // plain and typed mixed
  std::vector<SentenceTemplate> negatives;

  std::vector<const SentenceTemplate*> positives_plain() const;
  std::vector<const SentenceTemplate*> positives_typed() const;
};

/// The built-in hand-written bank: 40 templates per polarity.
const TemplateBank& builtin_templates();

/// Loads a bank from JSONL records {"template_id","text","polarity",
/// "style"}; every template is slot-checked on load.
TemplateBank load_templates(const std::filesystem::path& path);

/// Validates the slot constraints for a template of the given polarity;
/// throws InputError describing the violation.
void check_template(const SentenceTemplate& tmpl);

}  // namespace gdr::bench
