#pragma once
#include <stdexcept>
#include <string>

namespace ldpgc {

// Exit codes used by the CLI: 0 success, 2 usage, 3 size guard, 4 I/O.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SizeGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Privacy budget violation; raised by PrivacyAccountant::assert_total.
struct AccountingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ldpgc
