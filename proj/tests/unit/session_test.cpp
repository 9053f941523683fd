#include <chrono>
#include <thread>

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "pirl/error.hpp"
#include "pirl/harness/experiment.hpp"
#include "pirl/session/mailbox.hpp"
#include "pirl/session/messages.hpp"
#include "pirl/session/server.hpp"

using namespace pirl;
using namespace pirl::session;
namespace net = boost::asio;
namespace websocket = boost::beast::websocket;
using tcp = net::ip::tcp;

namespace {

template <class Pred>
bool wait_until(Pred pred, std::chrono::milliseconds limit = std::chrono::seconds(10)) {
  const auto deadline = std::chrono::steady_clock::now() + limit;
  while (!pred()) {
    if (std::chrono::steady_clock::now() > deadline) return false;
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  return true;
}

SessionConfig quick_config(std::uint64_t seed, int episodes, int frame_ms) {
  SessionConfig cfg;
  cfg.port = 0;
  cfg.seed = seed;
  cfg.episodes = episodes;
  cfg.frame_ms = frame_ms;
  return cfg;
}

}  // namespace

TEST(Messages, FrameRoundTrip) {
  const FrameMessage f{3, 17, {0.5, -0.25, 0.125, 1.0}, 1, 1.0, 17.0, 0.985, 0.776, 12};
  const auto text = encode_frame(f);
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j.at("type"), "frame");
  for (const char* key : {"episode", "step", "obs", "last_action", "last_reward", "ep_reward", "epsilon",
                          "reuse_prob", "rules"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(decode_frame(text), f);
}

TEST(Messages, ZerosStayExact) {
  const FrameMessage f{1, 1, {0.0, -0.0, 0.0, 0.0}, 0, 0.0, 0.0, 0.0, 0.0, 0};
  const auto text = encode_frame(f);
  EXPECT_EQ(text.find("-0"), std::string::npos) << text;
  const auto back = decode_frame(text);
  ASSERT_TRUE(back);
  for (double v : back->obs) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(back->reuse_prob, 0.0);
}

TEST(Messages, EpisodeEndAndAdvice) {
  const EpisodeEndMessage e{4, 123.0, 123};
  EXPECT_EQ(nlohmann::json::parse(encode_episode_end(e)).at("type"), "episode_end");
  EXPECT_EQ(decode_episode_end(encode_episode_end(e)), e);

  const AdviceMessage a{AdviceMessage::Type::Advice, 1, 1712.5};
  EXPECT_EQ(decode_advice(encode_advice(a), 2), a);
  const auto none = decode_advice(R"({"type":"none"})", 2);
  ASSERT_TRUE(none);
  EXPECT_EQ(none->type, AdviceMessage::Type::None);
}

TEST(Messages, BadAdviceIsRejected) {
  EXPECT_FALSE(decode_advice("not json", 2));
  EXPECT_FALSE(decode_advice(R"({"type":"cheer"})", 2));
  EXPECT_FALSE(decode_advice(R"({"type":"advice","action":2,"ts":0})", 2));
  EXPECT_FALSE(decode_advice(R"({"type":"advice","action":-1,"ts":0})", 2));
  EXPECT_FALSE(decode_advice(R"({"type":"advice","ts":0})", 2));
}

TEST(Mailbox, LatestWinsAndConsumesOnce) {
  AdviceMailbox box;
  EXPECT_FALSE(human_advise(box).given());
  box.post({AdviceMessage::Type::Advice, 0, 1.0});
  box.post({AdviceMessage::Type::Advice, 1, 2.0});
  const auto first = human_advise(box);
  ASSERT_TRUE(first.given());
  EXPECT_EQ(first.value(), 1u);
  EXPECT_FALSE(human_advise(box).given());

  box.post({AdviceMessage::Type::Advice, 1, 3.0});
  box.post({AdviceMessage::Type::None, 0, 4.0});
  EXPECT_FALSE(human_advise(box).given());
  EXPECT_TRUE(box.empty());
}

TEST(Mailbox, ReceiverCountsErrors) {
  AdviceMailbox box;
  AdviceReceiver rx(box, 2);
  EXPECT_FALSE(rx.receive(R"({"type":"shout"})"));
  EXPECT_FALSE(rx.receive("{"));
  EXPECT_TRUE(rx.receive(R"({"type":"advice","action":0,"ts":5})"));
  EXPECT_EQ(rx.errors(), 2u);
  EXPECT_EQ(rx.accepted(), 1u);
  EXPECT_FALSE(box.empty());
}

TEST(SessionServer, WithoutClientMatchesHeadlessSilentAdvisor) {
  const auto oracle = harness::load_oracle(harness::default_oracle_path(env::EnvKind::CartPole));
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    SessionServer server(quick_config(seed, 12, 0));
    const auto served = server.run();

    harness::RunConfig cfg;
    cfg.agent = harness::AgentKind::PP;
    cfg.advisor = advice::AdvisorProfile{"silent", 0.0, 0.0};
    cfg.episodes = 12;
    const auto headless = harness::run_seed(cfg, seed, oracle.get());
    EXPECT_EQ(served, headless.episodes) << "seed " << seed;
    EXPECT_TRUE(server.rules().empty());
  }
}

TEST(SessionServer, ScriptedClientInsertsRules) {
  SessionServer server(quick_config(1, 1, 2));
  net::io_context ioc;
  tcp::resolver resolver(ioc);
  websocket::stream<tcp::socket> ws(ioc);
  net::connect(ws.next_layer(), resolver.resolve("127.0.0.1", std::to_string(server.port())));
  ws.handshake("127.0.0.1", "/");
  ASSERT_TRUE(wait_until([&] { return server.client_connected(); }));

  std::vector<harness::EpisodeMetrics> metrics;
  std::thread loop([&] { metrics = server.run(); });

  int frames = 0;
  bool ended = false;
  boost::beast::flat_buffer buf;
  while (!ended) {
    buf.clear();
    boost::beast::error_code ec;
    ws.read(buf, ec);
    if (ec) break;
    const auto j = nlohmann::json::parse(boost::beast::buffers_to_string(buf.data()));
    if (j.at("type") == "frame") {
      ++frames;
      ws.write(net::buffer(encode_advice({AdviceMessage::Type::Advice, 1, 0.0})));
    } else if (j.at("type") == "episode_end") {
      ended = true;
    }
  }
  loop.join();
  boost::beast::error_code ignored;
  ws.close(websocket::close_code::normal, ignored);

  EXPECT_TRUE(ended);
  EXPECT_GT(frames, 0);
  ASSERT_EQ(metrics.size(), 1u);
  EXPECT_GE(metrics[0].rule_inserts, 1u);
  EXPECT_GE(server.rules().size(), 1u);
  EXPECT_GE(server.advice_received(), 1u);
  EXPECT_EQ(server.message_errors(), 0u);
}

TEST(SessionServer, StopEndsAnOpenEndedSession) {
  SessionServer server(quick_config(1, 0, 1));
  std::vector<harness::EpisodeMetrics> metrics;
  std::thread loop([&] { metrics = server.run(); });
  std::this_thread::sleep_for(std::chrono::milliseconds(100));
  server.stop();
  loop.join();
  SUCCEED();
}

TEST(SessionServer, BusyPortIsIoError) {
  SessionServer first(quick_config(1, 1, 0));
  auto cfg = quick_config(1, 1, 0);
  cfg.port = first.port();
  EXPECT_THROW(SessionServer second(cfg), IoError);
}
