#pragma once

#include <string_view>

#include "gdr/task.hpp"

namespace gdr::prompts {

/// A task's prompt template. The body contains a `{shots}` marker (replaced
/// with Input:/Output: example blocks, or removed for zero-shot) and one
/// input slot (`{text}`, or `{json}` for the companies task).
struct TaskPrompt {
  std::string_view body;
  std::string_view slot;
  bool shots_allowed;
};

const TaskPrompt& task_prompt(TaskKind kind);

/// Fills a task's template: the input goes into its slot and shots_block
/// (pre-rendered, possibly empty) replaces the `{shots}` marker.
std::string instantiate(TaskKind kind, std::string_view input,
                        std::string_view shots_block = {});

/// Prompts for sampling fresh sentence templates from a backend, for
/// scaling the benchmark beyond the built-in bank. Each asks for a JSON
/// object with "scenario", "sentence_style", and "context_sentence".
std::string_view template_generation_prompt_positive();
std::string_view template_generation_prompt_positive_typed();
std::string_view template_generation_prompt_negative();

/// Judge template for deciding whether a response reads as machine
/// generated. Slots: `{message}`, `{response}`. Shipped as a template only;
/// wiring a judge model is up to the caller.
std::string_view llm_response_id_prompt();

}  // namespace gdr::prompts
