#include "pirl/session/server.hpp"

#include <chrono>
#include <deque>
#include <mutex>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "pirl/error.hpp"
#include "pirl/harness/agent.hpp"

namespace pirl::session {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

namespace {

constexpr std::size_t kMaxOutbox = 256;

struct StopRequested {};

// One console connection. All members are touched only on the io thread.
class Connection : public std::enable_shared_from_this<Connection> {
 public:
  Connection(tcp::socket socket, AdviceReceiver& receiver, std::function<void()> on_close)
      : ws_(std::move(socket)), receiver_(receiver), on_close_(std::move(on_close)) {}

  void start() {
    ws_.async_accept([self = shared_from_this()](beast::error_code ec) {
      if (ec) return self->close();
      self->open_ = true;
      self->ws_.text(true);
      self->read();
    });
  }

  void send(std::shared_ptr<const std::string> msg) {
    if (!open_) return;
    // Keep the in-flight message (front) and drop the oldest queued one.
    if (outbox_.size() >= kMaxOutbox) outbox_.erase(outbox_.begin() + 1);
    outbox_.push_back(std::move(msg));
    if (!writing_) write();
  }

  void shutdown() {
    on_close_ = nullptr;
    close();
  }

 private:
  void read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return self->close();
      self->receiver_.receive(beast::buffers_to_string(self->buffer_.data()));
      self->buffer_.consume(self->buffer_.size());
      self->read();
    });
  }

  void write() {
    writing_ = true;
    ws_.async_write(net::buffer(*outbox_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      self->outbox_.pop_front();
      if (ec) return self->close();
      if (self->outbox_.empty()) {
        self->writing_ = false;
        return;
      }
      self->write();
    });
  }

  void close() {
    if (closed_) return;
    closed_ = true;
    open_ = false;
    beast::error_code ec;
    beast::get_lowest_layer(ws_).close(ec);
    if (on_close_) on_close_();
  }

  websocket::stream<tcp::socket> ws_;
  beast::flat_buffer buffer_;
  std::deque<std::shared_ptr<const std::string>> outbox_;
  AdviceReceiver& receiver_;
  std::function<void()> on_close_;
  bool open_ = false;
  bool writing_ = false;
  bool closed_ = false;
};

}  // namespace

struct SessionServer::Impl {
  SessionConfig config;
  std::unique_ptr<env::Environment> environment;
  AdviceMailbox mailbox;
  AdviceReceiver receiver;
  net::io_context ioc;
  net::executor_work_guard<net::io_context::executor_type> work;
  tcp::acceptor acceptor;
  std::shared_ptr<Connection> connection;  // io thread only
  std::atomic<bool> connected{false};
  std::atomic<bool> stopping{false};
  std::thread io_thread;
  persistence::RuleStore rules;

  explicit Impl(SessionConfig cfg)
      : config(std::move(cfg)),
        environment(env::make_environment(config.env)),
        receiver(mailbox, environment->action_count()),
        work(net::make_work_guard(ioc)),
        acceptor(ioc) {
    beast::error_code ec;
    const tcp::endpoint endpoint(net::ip::make_address(config.address, ec), config.port);
    if (ec) throw ValidationError("address", "invalid listen address '" + config.address + "'");
    acceptor.open(endpoint.protocol(), ec);
    if (!ec) acceptor.set_option(net::socket_base::reuse_address(true), ec);
    if (!ec) acceptor.bind(endpoint, ec);
    if (!ec) acceptor.listen(net::socket_base::max_listen_connections, ec);
    if (ec)
      throw IoError("cannot listen on " + config.address + ":" + std::to_string(config.port) + ": " + ec.message());
    accept();
    io_thread = std::thread([this] { ioc.run(); });
  }

  ~Impl() {
    net::post(ioc, [this] {
      beast::error_code ec;
      acceptor.close(ec);
      if (connection) connection->shutdown();
      connection.reset();
      ioc.stop();
    });
    if (io_thread.joinable()) io_thread.join();
  }

  void accept() {
    acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
      if (ec) {
        if (ec == net::error::operation_aborted || !acceptor.is_open()) return;
        return accept();
      }
      if (connection) {
        // Single-console sessions: turn away extra clients.
        beast::error_code ignored;
        socket.close(ignored);
      } else {
        connection = std::make_shared<Connection>(std::move(socket), receiver, [this] {
          connection.reset();
          connected = false;
          mailbox.clear();
        });
        connected = true;
        connection->start();
      }
      accept();
    });
  }

  void publish(std::string text) {
    if (!connected) return;
    auto msg = std::make_shared<const std::string>(std::move(text));
    net::post(ioc, [this, msg] {
      if (connection) connection->send(msg);
    });
  }
};

SessionServer::SessionServer(SessionConfig config) {
  config.env.validate("env");
  config.hyperparams.validate("hyperparams");
  config.discretization.validate("discretization");
  config.ppr.validate("ppr");
  if (config.frame_ms < 0) throw ValidationError("frame_ms", "must be >= 0");
  impl_ = std::make_unique<Impl>(std::move(config));
}

SessionServer::~SessionServer() = default;

std::uint16_t SessionServer::port() const noexcept {
  beast::error_code ec;
  const auto ep = impl_->acceptor.local_endpoint(ec);
  return ec ? impl_->config.port : ep.port();
}

std::vector<harness::EpisodeMetrics> SessionServer::run() {
  Impl& s = *impl_;
  HumanAdvisor advisor(s.mailbox);
  harness::Agent agent({harness::AgentKind::IrlHuman, s.config.hyperparams, s.config.discretization, s.config.ppr},
                       s.environment->observation_size(), s.environment->action_count(), s.config.seed, &advisor);
  const auto frame = std::chrono::milliseconds(s.config.frame_ms);

  auto observer = [&](const harness::StepEvent& ev) {
    if (s.stopping) throw StopRequested{};
    s.publish(encode_frame({ev.episode, ev.step, *ev.observation, ev.action, ev.reward, ev.episode_reward, ev.epsilon,
                            ev.reuse_probability, ev.rules}));
    if (ev.done) s.publish(encode_episode_end({ev.episode, ev.episode_reward, ev.step}));
    if (frame.count() > 0) std::this_thread::sleep_for(frame);
  };

  std::vector<harness::EpisodeMetrics> metrics;
  while (!s.stopping && (s.config.episodes <= 0 || static_cast<int>(metrics.size()) < s.config.episodes)) {
    try {
      metrics.push_back(agent.run_episode(*s.environment, observer));
    } catch (const StopRequested&) {
      break;  // the interrupted episode is not reported
    }
  }
  s.rules = agent.rules();
  return metrics;
}

void SessionServer::stop() noexcept { impl_->stopping = true; }

bool SessionServer::client_connected() const noexcept { return impl_->connected; }

std::uint64_t SessionServer::message_errors() const noexcept { return impl_->receiver.errors(); }

std::uint64_t SessionServer::advice_received() const noexcept { return impl_->receiver.accepted(); }

const persistence::RuleStore& SessionServer::rules() const { return impl_->rules; }

}  // namespace pirl::session
