#include "gdr/prompts.hpp"

#include "gdr/errors.hpp"
#include "gdr/text.hpp"

namespace gdr::prompts {

namespace {

constexpr std::string_view kPiiSentencePrompt =
    R"(You are an expert identifier of personally-identifiable information (PII). I will give you a sentence. You will decide if any of the contents in the sentence constitute PII. Examples of PII include drivers license numbers and any form of personal ID number, as well as API keys and other kinds of authentication tokens. Examples of things that are not PII, but look like PII, are scientific measurements, others forms of quantitative facts about the world such as counts and statistics, mathematical facts, or any otherwise long digit string that cannot be inferred to be about personal information based on the surrounding context. If there is real PII, rewrite the sentence to be free of any information that could be considered PII, such that the PII substrings in the sentence are replaced with equivalent, generic PII strings that are obviously fake, such as 12345 or abcdef, but where the replacement matches the original PII string in length. In the case the sentence does not include substrings that are PII, keep the original sentence COMPLETELY unchanged, including ALL numerical values. I repeat, in this latter case, do not change any values or replace any substrings with generic placeholders. Respond only with the final sentence. Do not respond with any extra commentary.

{shots}Apply these instructions to this text:

{text})";

constexpr std::string_view kCompaniesPrompt =
    R"(Rewrite the value text for the following JSON to be free of any private information, where any information related to the upcoming, next CEO transition should be considered, private. For any potentially private information, replace it with a semantically equivalent piece of information that is randomly sampled and not overlapping in any words with the replaced text. The current CEO is public knowledge. Make sure to make all such replacements semantically consistent throughout the rewritten text. Absolutely do not use generic placeholder text. Make sure to use specific, semantically consistent replacement values. Respond only with the valid JSON with the rewritten values:

JSON: {json})";

constexpr std::string_view kCodeLinePrompt =
    R"(I will give you a line from a code file, which might include just a single character in the case of a bracket, e.g. '}'. You will decide if any of the contents in the line of code constitutes PII. Examples of personally-identifiable information (PII), such as drivers license numbers and any form of personal ID number, as well as API keys and other kinds of authentication tokens. Examples of things that are not PII, but look like PII, are variables in code that could reference personal information, scientific measurements, others forms of quantitative facts about the world such as counts and statistics, mathematical facts, or any otherwise long digit string that cannot be inferred to be about personal information based on the surrounding context. Code variables that could reference PII **ARE NOT** PII.

**MANDATORY GUIDELINES:**

- Variable symbols which reference values that can be PII, are NOT themselves PII. Therefore DO NOT rewrite these.

- Do not rewrite parts of strings that correspond to format string or template variables.

- Only rewrite parts of the input code corresponding to strings.

- Therefore, no matter what, NEVER rewrite a variable name into a string of numbers or other kind of placeholder.

- Make sure to rewrite PII strings even if they appear in code comments.

- If there is any real PII, rewrite the sentence to be free of any information that could be considered PII, such that the PII substrings in the sentence are replaced with equivalent, generic PII strings that are obviously fake, such as 12345 or abcdef, but where the replacement matches the original PII string in length.

- In the case the sentence does not include substrings that are PII, keep the original sentence COMPLETELY unchanged, including ALL numerical values. I repeat, in this latter case, do not change any values or replace any substrings with generic placeholders.

- Whenever possible, make sure your rewrites abide by the code syntax of the programming language of the surrounding text.

- However do not fix any parts of the code that does not need to be rewritten for PII.

As you rewrite the code, be absolutely sure to follow the guidelines above.

**Examples illustrating the rules:**

Example 1:

Input: "console.log(Server Is Running In localhost: ${PORT});"

Output: "console.log(Server Is Running In localhost: ${PORT});"

Explanation: Since ${PORT} is a variable, not the PII itself.

Example 2:

Input: var ip_address = '169.08.16.02'

Output: var ip_address = '192.01.01.01'

Explanation: The IP string value is an instance of real PII.

Example 3:

Input: accessToken = 'pk.ueqwie921982312398daskjhdfs02.129387kjshdak92'

Output: accessToken = 'abcdefghijklmnopqrstuvwxyz'

Explanation: The accessToken value is set to a high-entropy string that is likely a real token and thus is PII.

{shots}Respond only with the final sentence. Do not respond with any extra commentary. Apply these instructions to this text:

{text})";

constexpr std::string_view kDetoxPrompt =
    R"(Task:

- You receive a highly toxic or offensive snippet from a conversation, consisting of two messages in an exchange. The start of each message is marked by <|SOM|>, and the end of each message, by <|EOM|>.

- First, determine whether there are any true facts about the world inside the text.

- Second, for each fact identified, come up with a question and answer pair, where the answer is based on the fact identified. Answers should be a single concept, like a noun or phrase, or a yes/no value. Some examples:

Example 1:

Fact: NYC is an expensive place to live.

Q: Is NYC considered an expensive place to live?

A: Yes

Example 2:

Fact: Pierce Brosnan played James Bond in Goldeneye.

Q: Who played James Bond in Goldeneye?

A: Pierce Brosnan

- Third, rewrite the offensive text into a neutral, inoffensive form, taking care to preserve any ground-truth facts present in the original text.

- When rewriting the text to be clean, inoffensive, and safe, do not add any extra opinions, judgements, or commentary. Only include the rewritten text.

- The rewritten text should contain as much detail from the original input text as possible, including the ground-truth facts identified if any, while rewording any toxic or offensive content to be non-toxic and inoffensive.

- Respond in the following format:

# True facts

One line for each true fact in the original text. If there are multiple facts, include each one in its own line. Try your best to include all the facts.

# Question and answer pairs

One question and answer pair, structured as

Q: <Question>

A: <Answer>

for each fact identified above, where each pair is separated by a new line.

# Cleaned text

A neutralized, inoffensive and safe version of the input text without any extra commentary on the toxicity of the input text, while preserving any ground-truth facts identified above. If the text consists of multiple comments, rewrite each one, preserving the colloquial flavor of the messages. Begin each rewritten message with <|SOM|> and its end with <|EOM|> like in the input.

{shots}- Apply the above instructions to this text:

{text})";

constexpr std::string_view kTemplatePositive =
    R"(Task:

- Generate a template for a sentence that leaks a {pii} variable, which stands for an alphanumeric string value that represents some sensitive personally identifiable information (PII), such as an actual driver's license, social security number, an encryption key, authentication token, password, or other kinds of sensitive identifiers.

- Make it obvious from the sentence contents that the {pii} variable is indeed a form of PII. Thus make sure to mention that the variable is an identifier or personal detail if that is not clear from usage.

- Make sure that in the context of the sentence, it makes sense for the {pii} value can be replaced with the actual value of the PII. That is, {pii} should not stand in for the category, but the actual value. The sentence should make sense considering this usage.

- Do not state the length of the {pii} variable.

- However, do not state the name or field-type of the specific PII in the template. Keep it generic. Use terms like "personal details", "identifier", "secret", "ID", or "account info" instead.

- Do not include any other template variables.

- See some examples sentences below for inspiration.

Example 1 - Incomplete:

My info: {pii}

Example 2 - Formal:

Yes, simply enter {pii} for the authentication details.

Example 3 - Colloquial:

If I remember correctly, her unique identifier should be {pii}.

Example 4 - Formal:

Yes sir, of course. I can confirm that it is {pii}.

Example 5 - Colloquial:

So you wanna know my details? Okay, but don't tell anyone. It's {pii}

- Some negative examples that do not follow the above instructions, because (1) the {pii} is being used as a category name, and not the actual PII string itself, or (2) there's not enough information that the string is a PII, or (3) a specific length is assigned to the {pii} variable. See some examples of bad templates below:

Bad example 1 - Variable used as category name:

You got a {pii} on ya?

Bad example 2 - Variable used as category name:

Please enter your {pii} into the field below.

Bad example 3 - Not clear if variable is PII:

Oh, so the value is just {pii}?

Bad example 4 - Specific length assigned to variable value:

Enter the last 4 digits, which are {pii}?

- Be extremely creative and come up with other settings where such PII might be leaked in text or conversation, e.g. on a customer support call, in a group chat with friends, in an email at work, as a sensitive document that has leaked online, or as a transcript of a real-life conversation. Keep it interesting!

- Do not actually include a real number in the sentence. Always represent the number by its template variable, {pii}.

- Keep your sentences syntactically diverse. Vary your style, randomizing equally over colloquial or formal styles.

- Use a combination of complete and incomplete sentences, dialogue and prose. Mix it up!

- Respond only with a single sentence template without additional commentary.

- Structure your answer in this JSON this format:

{
    "scenario": "scenario in the template, in which the PII is leaked",
    "sentence_style": "sentence style",
    "context_sentence": "the sentence template"
})";

constexpr std::string_view kTemplatePositiveTyped =
    R"(Task:

- Generate a template for a sentence that leaks a {pii} variable, which stands in for an alphanumeric string that represents some sensitive personally identifiable information (PII) that has been leaked, such as a driver's license, social security number, an encryption key, authentication token, password, or other kinds of sensitive identifiers.

- Also, ensure you include a {pii_type} variable in the sentence template, which stands in for a category of PII, like "US_PASSPORT_NUMBER" or "AWS_AUTH_TOKEN", which will be passed in later.

- Do not state the length of the {pii} variable anywhere in the template.

- Never include text asking for the last digits of any value.

- See some examples sentences below for inspiration.

Example 1 - Incomplete sentence:

{pii_type}: {pii}

Example 2 - Colloquial:

Here is my {pii_type} {pii}

Example 3 - Formal:

Before checking on your prescriptions for knee pain, can I you confirm your {pii_type} is {pii}?

Example 4 - Colloquial:

Before I could cross the border, I had to verify my {pii_type}, which as you know, is {pii}.

Example 5 - Formal:

For verification purposes, please enter your {pii_type}. For employees hired before the merger, this value should be {pii}.

- Some negative examples that do not follow the above instructions, because a specific length is assigned to the {pii} variable. See some examples of bad templates below:

Bad example 1 - Specific length assigned to variable value:

Enter the last 4 digits, which are {pii}?

- Be extremely creative and come up with other settings where such PII might be leaked in text or conversation, e.g. on a customer support call, in a group chat with friends, in an email at work, as a sensitive document that has leaked online, or as a transcript of a real-life conversation. Keep it interesting!

- Do not actually include a real number in the sentence. Always represent the number by its template variable, {pii}.

- Keep your sentences syntactically diverse. Vary your style, randomizing equally over colloquial and formal.

- Use a combination of complete and incomplete sentences, dialogue and prose. Mix it up!

- Respond only with a single sentence template without additional commentary.

- Structure your answer as valid JSON in this format:

{
   "scenario": "scenario in the template, in which the PII is leaked",
   "sentence_style": "sentence style",
   "context_sentence": "the sentence template"
})";

constexpr std::string_view kTemplateNegative =
    R"(Task:

- Generate a sentence template with a {value} variable that stands in for a long (8-20) digit number that is used in the sentence as a piece of non-personally identifiable information, such as a scientific measurement, census result, a mathematical fact, a market report number, or other commonly available public fact.

- See some examples sentences below for inspiration.

Example 1:

The star was a distance of {value} from the Earth.

Example 2:

There are {value} cells in the body of the new specimen.

Example 3:

Wow, I didn't realize Tom would end up inheriting {value} pounds of clay from his late father, a sculpter.

Example 4:

Welcome to Mars. Population: {value}.

Example 5:

The typical FutureOS takes {value} KB to install.

Example 6:

Now featuring over {value} songs.

- Be creative and come up with other settings, but make sure the number represented by {value} can come up in a publicly available text and not information that can be considered private in any way. Keep it interesting!

- Do not actually include a real number in the sentence. Always represent the number by its template variable, {value}.

- Keep your sentences syntactically diverse. Try sounding formal, casual, and colloquial. Vary your style.

- Use a combination of complete and incomplete sentences, dialogue and prose.

- Respond only with a single sentence template without additional commentary.

- Structure your answer in this JSON this format:

{
   "scenario": "a creative scenario where the multi-digit value might appear without revealing private information",
   "sentence_style": "a 1-2 word description of the sentence style",
   "context_sentence": "the sentence template"
})";

constexpr std::string_view kLlmResponseId =
    R"(# Instructions

- You are given a chat message and a possible response. Decide whether this response is likely to be generated by an AI or other automated program.

- If you think the response is generated by an AI or other automated program, respond with "yes", and otherwise, "no".

- Structure your answer as follows:

# Answer

Yes or no

Apply the above instructions to the interaction below:

Message:

{message}

Response:

{response})";

const TaskPrompt kPrompts[] = {
    {kPiiSentencePrompt, "{text}", true},    // PiiSentence
    {kCompaniesPrompt, "{json}", false},     // CompaniesJson
    {kCodeLinePrompt, "{text}", true},       // CodeLine
    {kDetoxPrompt, "{text}", false},         // DetoxPair
};

}  // namespace

const TaskPrompt& task_prompt(TaskKind kind) {
  return kPrompts[static_cast<int>(kind)];
}

std::string instantiate(TaskKind kind, std::string_view input,
                        std::string_view shots_block) {
  const TaskPrompt& tp = task_prompt(kind);
  std::string out = text::replace_first(tp.body, "{shots}", shots_block);
  if (!text::contains(out, tp.slot)) {
    throw InvariantError("prompt template lost its input slot");
  }
  return text::replace_first(out, tp.slot, input);
}

std::string_view template_generation_prompt_positive() {
  return kTemplatePositive;
}

std::string_view template_generation_prompt_positive_typed() {
  return kTemplatePositiveTyped;
}

std::string_view template_generation_prompt_negative() {
  return kTemplateNegative;
}

std::string_view llm_response_id_prompt() { return kLlmResponseId; }

}  // namespace gdr::prompts
