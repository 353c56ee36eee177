#include "scalerd/error.hpp"

namespace scalerd {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::validation: return "validation";
        case ErrorKind::io: return "io";
        case ErrorKind::numeric: return "numeric";
    }
    return "unknown";
}

namespace {

std::string compose(const std::string& stage, const std::string& detail) {
    return stage.empty() ? detail : stage + ": " + detail;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::string stage)
    : std::runtime_error(compose(stage, message)),
      kind_(kind),
      stage_(std::move(stage)),
      detail_(message) {}

Error Error::with_stage(const std::string& stage) const {
    return Error(kind_, detail_, stage);
}

}  // namespace scalerd
