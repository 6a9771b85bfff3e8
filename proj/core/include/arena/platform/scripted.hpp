#pragma once

#include <string>

#include "arena/gateway/chat.hpp"

namespace arena::platform {

/// Offline stand-in for a language model. Produces a well-formed reply for
/// every request purpose; the reply is a pure function of the request, so
/// identical requests always get identical answers.
std::string scripted_reply(const gateway::ChatRequest& req);

}  // namespace arena::platform
