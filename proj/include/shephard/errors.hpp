#pragma once

#include <stdexcept>
#include <string>

namespace shephard {

// Exit-code contract of the CLI maps onto these: input 2, budget 3, inapplicable 4.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Inapplicable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ArithmeticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace shephard
