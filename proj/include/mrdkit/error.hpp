#ifndef MRDKIT_ERROR_HPP
#define MRDKIT_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mrdkit {

enum class errc {
    not_prime,
    reducible,
    overflow,
    char_two,
    shape_mismatch,
    wrong_orientation,
    singular,
    singular_input,
    not_symmetric,
    non_square_det,
    too_large,
    bad_ell,
    odd_n,
    bad_argument,
    unsupported,
    internal,
};

const char* errc_name(errc c);

class MrdError : public std::runtime_error {
  public:
    MrdError(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

// Raised when an enumeration would exceed the configured cap.
class TooLargeError : public MrdError {
  public:
    TooLargeError(std::uint64_t count, std::uint64_t cap, const std::string& what)
        : MrdError(errc::too_large,
                   what + " (work " + std::to_string(count) + " exceeds cap " + std::to_string(cap) + ")"),
          count_(count),
          cap_(cap) {}

    std::uint64_t count() const { return count_; }
    std::uint64_t cap() const { return cap_; }

  private:
    std::uint64_t count_;
    std::uint64_t cap_;
};

// Enumeration budgets. Defaults keep every exhaustive check interactive;
// callers scale both knobs at once via the CLI --max-work option.
struct WorkBudget {
    std::uint64_t max_codewords = std::uint64_t(1) << 24;
    std::uint64_t max_group_pairs = std::uint64_t(1) << 22;

    static WorkBudget unlimited() {
        WorkBudget b;
        b.max_codewords = ~std::uint64_t(0);
        b.max_group_pairs = ~std::uint64_t(0);
        return b;
    }
};

}  // namespace mrdkit

#endif
