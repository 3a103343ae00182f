#include "swvlasov.h"

#include <string>

namespace {

thread_local std::string g_last_error;

}  // namespace

namespace swv::detail {

void set_last_error(const std::string& message) { g_last_error = message; }

}  // namespace swv::detail

extern "C" {

const char* swv_version(void) { return "0.1.0"; }

const char* swv_last_error(void) { return g_last_error.c_str(); }

}  // extern "C"
