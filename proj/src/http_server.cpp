#include <atomic>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <httplib.h>

#include "ethex/service.hpp"

namespace ethex {

struct HttpFrontend::Impl {
  explicit Impl(Service& s) : service(s) {}

  void dispatch(const httplib::Request& req, httplib::Response& res) {
    Response out = service.handle(req.method, req.path, req.body);
    res.status = out.status;
    for (const auto& [name, value] : out.headers) res.set_header(name, value);
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Expose-Headers", "X-History-Index");
    if (out.status != 204) {
      res.set_content(dump_payload(out.body), "application/json");
    }
  }

  Service& service;
  httplib::Server server;
};

HttpFrontend::HttpFrontend(Service& service)
    : impl_(std::make_unique<Impl>(service)) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    impl_->dispatch(req, res);
  };
  auto& server = impl_->server;
  server.Get(".*", handler);
  server.Post(".*", handler);
  server.Delete(".*", handler);
  server.Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

HttpFrontend::~HttpFrontend() = default;

int HttpFrontend::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpFrontend::serve() { return impl_->server.listen_after_bind(); }

void HttpFrontend::stop() { impl_->server.stop(); }

void ServiceConfig::set_listen(const std::string& host_port) {
  auto colon = host_port.rfind(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("listen address must be HOST:PORT, got '" +
                                host_port + "'");
  }
  host = host_port.substr(0, colon);
  port = std::stoi(host_port.substr(colon + 1));
  if (port < 0 || port > 65535) {
    throw std::invalid_argument("port out of range in '" + host_port + "'");
  }
}

ServiceConfig ServiceConfig::load(const std::optional<std::string>& config_file) {
  ServiceConfig config;
  if (config_file) {
    std::ifstream in(*config_file);
    if (!in) throw std::runtime_error("cannot open config file " + *config_file);
    json j = json::parse(in);
    if (j.contains("listen")) config.set_listen(j["listen"].get<std::string>());
    if (j.contains("snapshot")) config.snapshot_path = j["snapshot"].get<std::string>();
  }
  if (const char* listen = std::getenv("ETHEX_LISTEN")) config.set_listen(listen);
  if (const char* snapshot = std::getenv("ETHEX_SNAPSHOT")) {
    config.snapshot_path = snapshot;
  }
  return config;
}

int run_server(const ServiceConfig& config) {
  Service service(config.snapshot_path);
  if (config.snapshot_path && std::filesystem::exists(*config.snapshot_path)) {
    service.store().restore(*config.snapshot_path);
    std::cerr << "restored " << service.store().size() << " sessions from "
              << *config.snapshot_path << '\n';
  }

  // Signals are consumed by a watcher thread so the server can be stopped
  // outside of signal-handler context.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  HttpFrontend frontend(service);
  const int port = frontend.bind(config.host, config.port);
  if (port < 0) {
    std::cerr << "cannot listen on " << config.host << ':' << config.port << '\n';
    return 3;
  }
  std::cerr << "listening on " << config.host << ':' << port << '\n';

  std::atomic<bool> done{false};
  std::thread watcher([&] {
    const timespec poll{0, 200'000'000};
    while (!done) {
      if (sigtimedwait(&signals, nullptr, &poll) > 0) {
        frontend.stop();
        return;
      }
    }
  });
  frontend.serve();
  done = true;
  watcher.join();

  if (config.snapshot_path) {
    service.store().snapshot(*config.snapshot_path);
    std::cerr << "saved " << service.store().size() << " sessions to "
              << *config.snapshot_path << '\n';
  }
  return 0;
}

}  // namespace ethex
