#include "gdr/task.hpp"

#include "gdr/errors.hpp"

namespace gdr {

std::string_view task_kind_name(TaskKind kind) {
  switch (kind) {
    case TaskKind::PiiSentence:
      return "pii_sentence";
    case TaskKind::CompaniesJson:
      return "companies_json";
    case TaskKind::CodeLine:
      return "code_line";
    case TaskKind::DetoxPair:
      return "detox_pair";
  }
  return "unknown";
}

TaskKind task_kind_from_name(std::string_view name) {
  if (name == "pii_sentence" || name == "pii") return TaskKind::PiiSentence;
  if (name == "companies_json" || name == "companies")
    return TaskKind::CompaniesJson;
  if (name == "code_line" || name == "code") return TaskKind::CodeLine;
  if (name == "detox_pair" || name == "detox") return TaskKind::DetoxPair;
  throw InputError("unknown task kind: " + std::string(name));
}

}  // namespace gdr
