#include "pirl/session/mailbox.hpp"

namespace pirl::session {

void AdviceMailbox::post(const AdviceMessage& m) {
  std::lock_guard lock(mu_);
  slot_ = m;
}

std::optional<AdviceMessage> AdviceMailbox::take() {
  std::lock_guard lock(mu_);
  std::optional<AdviceMessage> out;
  out.swap(slot_);
  return out;
}

void AdviceMailbox::clear() {
  std::lock_guard lock(mu_);
  slot_.reset();
}

bool AdviceMailbox::empty() const {
  std::lock_guard lock(mu_);
  return !slot_.has_value();
}

bool AdviceReceiver::receive(std::string_view text) {
  auto m = decode_advice(text, action_count_);
  if (!m) {
    ++errors_;
    return false;
  }
  mailbox_.post(*m);
  ++accepted_;
  return true;
}

advice::Advice human_advise(AdviceMailbox& mailbox) {
  auto m = mailbox.take();
  if (!m || m->type == AdviceMessage::Type::None) return advice::Advice::none();
  return advice::Advice::action(m->action);
}

}  // namespace pirl::session
