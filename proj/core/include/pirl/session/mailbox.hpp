#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string_view>

#include "pirl/advice/advisor.hpp"
#include "pirl/session/messages.hpp"

namespace pirl::session {

// Holds at most one pending message. Posting replaces whatever is there;
// taking empties it. Both sides hold the lock only to swap a value.
class AdviceMailbox {
 public:
  void post(const AdviceMessage& m);
  std::optional<AdviceMessage> take();
  void clear();
  bool empty() const;

 private:
  mutable std::mutex mu_;
  std::optional<AdviceMessage> slot_;
};

// Turns incoming console text into mailbox posts; anything it cannot use is
// dropped and counted.
class AdviceReceiver {
 public:
  AdviceReceiver(AdviceMailbox& mailbox, std::size_t action_count)
      : mailbox_(mailbox), action_count_(action_count) {}

  // Returns true when the message was accepted.
  bool receive(std::string_view text);
  std::uint64_t errors() const noexcept { return errors_.load(); }
  std::uint64_t accepted() const noexcept { return accepted_.load(); }

 private:
  AdviceMailbox& mailbox_;
  std::size_t action_count_;
  std::atomic<std::uint64_t> errors_{0};
  std::atomic<std::uint64_t> accepted_{0};
};

// Consumes the pending message; an empty mailbox or a "none" message yields
// no advice.
advice::Advice human_advise(AdviceMailbox& mailbox);

// Live trainer: advice present when the human sent some, taken as given.
class HumanAdvisor final : public advice::Advisor {
 public:
  explicit HumanAdvisor(AdviceMailbox& mailbox) : mailbox_(mailbox) {}
  advice::Advice advise(std::span<const double> /*obs*/, Rng& /*rng*/) override {
    return human_advise(mailbox_);
  }

 private:
  AdviceMailbox& mailbox_;
};

}  // namespace pirl::session
