#pragma once

#include <string>
#include <string_view>

namespace gdr {

/// The four refinement tasks the toolkit knows how to prompt for.
enum class TaskKind { PiiSentence, CompaniesJson, CodeLine, DetoxPair };

std::string_view task_kind_name(TaskKind kind);
TaskKind task_kind_from_name(std::string_view name);

}  // namespace gdr
