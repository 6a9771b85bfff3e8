#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace arena {

/// Base of every error the engine raises. `code()` is a stable machine-readable
/// token (snake_case) used by the HTTP layer and the CLI.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

#define ARENA_DEFINE_ERROR(Name, Base, Code)                                   \
  class Name : public Base {                                                   \
  public:                                                                      \
    explicit Name(const std::string& message) : Base(Code, message) {}         \
                                                                               \
  protected:                                                                   \
    Name(std::string code, const std::string& message)                         \
        : Base(std::move(code), message) {}                                    \
  };

// game_core
ARENA_DEFINE_ERROR(PhaseError, Error, "phase_error")
ARENA_DEFINE_ERROR(InputError, Error, "input_error")
ARENA_DEFINE_ERROR(SessionClosed, Error, "session_closed")
ARENA_DEFINE_ERROR(DoubleDecision, Error, "double_decision")
ARENA_DEFINE_ERROR(ConsentError, Error, "consent_required")
ARENA_DEFINE_ERROR(PreconditionError, Error, "precondition_failed")
ARENA_DEFINE_ERROR(NotFound, Error, "not_found")

// data files and templates
ARENA_DEFINE_ERROR(TemplateError, Error, "template_error")
ARENA_DEFINE_ERROR(DataFileError, Error, "data_file_error")
ARENA_DEFINE_ERROR(IoError, Error, "io_error")

// llm gateway
ARENA_DEFINE_ERROR(GatewayError, Error, "gateway_error")
ARENA_DEFINE_ERROR(TransportError, GatewayError, "transport_error")
ARENA_DEFINE_ERROR(AuthError, GatewayError, "auth_error")
ARENA_DEFINE_ERROR(RateLimitError, GatewayError, "rate_limit_error")
ARENA_DEFINE_ERROR(ReplayMissError, GatewayError, "replay_miss")
ARENA_DEFINE_ERROR(TemperatureContractError, Error, "temperature_contract")
ARENA_DEFINE_ERROR(ModerationError, Error, "moderation_error")

// structured-output parsing
ARENA_DEFINE_ERROR(TemplateParseError, Error, "template_parse_error")
ARENA_DEFINE_ERROR(DecisionParseError, TemplateParseError, "decision_parse_error")
ARENA_DEFINE_ERROR(LabelParseError, TemplateParseError, "label_parse_error")
ARENA_DEFINE_ERROR(AnswerParseError, TemplateParseError, "answer_parse_error")

// assessment / perception
ARENA_DEFINE_ERROR(RangeError, Error, "range_error")
ARENA_DEFINE_ERROR(BundleError, Error, "bundle_error")

// metrics
ARENA_DEFINE_ERROR(LengthMismatch, Error, "length_mismatch")
ARENA_DEFINE_ERROR(EmptyInput, Error, "empty_input")
ARENA_DEFINE_ERROR(MissingTruth, Error, "missing_truth")

#undef ARENA_DEFINE_ERROR

/// Raised by Que-based assessment when one or more items could not be answered.
class ItemFailure : public Error {
public:
  ItemFailure(std::vector<int> failed_items, const std::string& message)
      : Error("item_failure", message), failed_items_(std::move(failed_items)) {}

  const std::vector<int>& failed_items() const noexcept { return failed_items_; }

private:
  std::vector<int> failed_items_;
};

}  // namespace arena
