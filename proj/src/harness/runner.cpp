#include "drunkguard/harness/runner.hpp"

#include "drunkguard/actuators/actuators.hpp"
#include "drunkguard/alert/alert.hpp"
#include "drunkguard/fusion/evaluator.hpp"
#include "drunkguard/sensors/eyes.hpp"
#include "drunkguard/sim/scheduler.hpp"
#include "drunkguard/telemetry/http_update.hpp"
#include "drunkguard/telemetry/mqtt.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <random>
#include <variant>

namespace drunkguard::harness {

using sim::Micros;
using sim::SimTime;

namespace {

struct EvalTick {};
struct FrameTick {
  std::int64_t index = 0;
};
struct NetCollect {
  std::uint64_t job = 0;
};

struct SimEvent {
  SimTime at;
  std::variant<sim::ScenarioEvent, EvalTick, FrameTick, NetCollect> what;
};

struct PendingJob {
  std::string channel;
  std::future<telemetry::PublishResult> result;
};

std::int64_t draw_jitter(std::mt19937_64& rng, std::int64_t amplitude) {
  const auto span = static_cast<std::uint64_t>(2 * amplitude + 1);
  return static_cast<std::int64_t>(rng() % span) - amplitude;
}

std::string flags_text(fusion::FlagVector f) {
  std::string s;
  s += f.a ? '1' : '0';
  s += f.h ? '1' : '0';
  s += f.d ? '1' : '0';
  return s;
}

class Session {
 public:
  Session(const Scenario& scenario, RunConfig config, net::Transport& transport)
      : scenario_(scenario),
        config_(std::move(config)),
        evaluator_(config_.sensors),
        worker_(transport),
        pulse_rng_(config_.seed),
        breath_rng_(config_.seed ^ 0x9e3779b97f4a7c15ULL) {
    interlock_.debounce_n = config_.debounce_n;
  }

  RunSummary run() {
    log(SimTime{}, LogKind::Event,
        "session policy=" + std::string(fusion::to_string(config_.policy)) +
            " debounce=" + std::to_string(config_.debounce_n) +
            " eval_period_us=" + std::to_string(config_.eval_period));

    scheduler_.subscribe([this](sim::EventId, const SimEvent& e) { deliver(e); });
    for (const auto& event : scenario_.events) {
      SimTime at = event.at;
      if (config_.pulse_jitter > 0 && event.channel() == sim::Channel::Pulse) {
        at = SimTime(std::max<Micros>(0, at.micros() + draw_jitter(pulse_rng_, config_.pulse_jitter)));
      }
      sim::ScenarioEvent shifted = event;
      shifted.at = at;
      scheduler_.schedule(SimEvent{at, shifted});
    }
    scheduler_.schedule(SimEvent{SimTime{}, FrameTick{0}});
    if (config_.eval_period <= scenario_.duration.micros()) {
      scheduler_.schedule(SimEvent{SimTime(config_.eval_period), EvalTick{}});
    }

    scheduler_.run_until(scenario_.duration);
    // Only network collections can remain past the scenario end.
    while (scheduler_.pending() > 0) {
      scheduler_.run_until(scheduler_.next_at());
    }

    summary_.ignition_energized = relay_.energized;
    summary_.alarm_on = alarm_.on();
    summary_.final_decision = interlock_.last_decision;
    return std::move(summary_);
  }

 private:
  void log(SimTime ts, LogKind kind, std::string payload) {
    summary_.log.append(ts, kind, std::move(payload));
  }

  void deliver(const SimEvent& e) {
    std::visit([&](const auto& what) { handle(e.at, what); }, e.what);
  }

  void handle(SimTime now, const sim::ScenarioEvent& event) {
    if (shut_down_) return;
    log(now, LogKind::Event, sim::describe(event));
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, sim::BreathSample>) {
            std::int64_t v = p.conc.value;
            if (config_.breath_jitter > 0) {
              v = std::clamp<std::int64_t>(v + draw_jitter(breath_rng_, config_.breath_jitter), 0,
                                           sim::kMaxBreathMicroMgL);
            }
            evaluator_.on_breath(sensors::BreathConc{v});
          } else if constexpr (std::is_same_v<T, sim::PulseEdge>) {
            evaluator_.on_pulse(now);
          } else if constexpr (std::is_same_v<T, sim::EyeLabel>) {
            camera_label_ = p;
          } else if (p == sim::ControlCommand::Reset) {
            on_reset(now);
          } else {
            shut_down_ = true;
          }
        },
        event.payload);
  }

  void handle(SimTime now, const FrameTick& tick) {
    if (shut_down_) return;
    if (camera_label_) {
      evaluator_.on_frame(now, *camera_label_);
    }
    const int fps = config_.sensors.eyes.fps;
    const SimTime next = sensors::frame_time(tick.index + 1, fps);
    if (next <= scenario_.duration) {
      scheduler_.schedule(SimEvent{next, FrameTick{tick.index + 1}});
    }
  }

  void handle(SimTime now, const EvalTick&) {
    if (shut_down_) return;
    ++summary_.evaluations;
    const fusion::Evaluation eval = evaluator_.evaluate(now);
    log(now, LogKind::Flags,
        flags_text(eval.flags) + " c=" + std::to_string(eval.flags.count()) +
            " breath=" + std::to_string(eval.breath ? eval.breath->value : -1) +
            " bpm=" + std::to_string(eval.bpm ? eval.bpm->value : -1));

    fusion::StepResult result = fusion::step(interlock_, eval.flags, config_.policy);
    interlock_ = result.state;
    log(now, LogKind::Decision, std::string(fusion::to_string(result.decision)));
    bool force_lcd = false;
    for (fusion::Command cmd : result.commands) {
      log(now, LogKind::Command, std::string(fusion::to_string(cmd)));
    }
    for (fusion::Command cmd : result.commands) {
      switch (cmd) {
        case fusion::Command::IgnitionOff:
          relay_ = actuators::apply(relay_, actuators::RelayCommand::IgnitionOff);
          ++summary_.cutoffs;
          break;
        case fusion::Command::AlarmOn:
          alarm_.set(actuators::AlarmCommand::On);
          break;
        case fusion::Command::SendAlert:
          send_alert(now, eval, result.decision);
          break;
        case fusion::Command::TelemetryPush:
          push_telemetry(now, eval, result.decision);
          break;
        case fusion::Command::LcdWarn:
          force_lcd = true;
          break;
        case fusion::Command::IgnitionReset:
        case fusion::Command::AlarmOff:
          break;
      }
    }
    show(now, actuators::render_lcd(eval.flags.a, eval.bpm, result.decision), force_lcd);

    const SimTime next = now + config_.eval_period;
    if (next <= scenario_.duration) {
      scheduler_.schedule(SimEvent{next, EvalTick{}});
    }
  }

  void handle(SimTime now, const NetCollect& collect) {
    auto it = jobs_.find(collect.job);
    const telemetry::PublishResult r = it->second.result.get();
    std::string payload = it->second.channel + " job=" + std::to_string(collect.job);
    if (r.delivered) {
      ++summary_.net_delivered;
      payload += " delivered attempt=" + std::to_string(r.attempts);
    } else {
      ++summary_.net_failed;
      payload += " failed attempts=" + std::to_string(r.attempts) + " error=" + r.last_error;
    }
    jobs_.erase(it);
    log(now, LogKind::NetResult, std::move(payload));
  }

  void on_reset(SimTime now) {
    evaluator_.clear();
    fusion::StepResult result = fusion::reset(interlock_);
    interlock_ = result.state;
    for (fusion::Command cmd : result.commands) {
      log(now, LogKind::Command, std::string(fusion::to_string(cmd)));
    }
    relay_ = actuators::apply(relay_, actuators::RelayCommand::Reset);
    alarm_.set(actuators::AlarmCommand::Off);
    show(now, actuators::render_lcd(false, std::nullopt, fusion::Decision::Normal), false);
  }

  void show(SimTime now, const actuators::LcdFrame& frame, bool force) {
    if (!force && lcd_ == frame) return;
    lcd_ = frame;
    log(now, LogKind::Lcd, frame.row(0) + "|" + frame.row(1));
  }

  void submit(SimTime now, std::string channel, net::Bytes bytes, const net::Address& to,
              const telemetry::RetryPolicy& policy) {
    const std::uint64_t job = ++last_job_;
    log(now, LogKind::NetOut,
        channel + " job=" + std::to_string(job) + " to=" + to.to_string() +
            " bytes=" + std::to_string(bytes.size()));
    jobs_.emplace(job, PendingJob{channel, worker_.submit(std::move(bytes), to, now, policy)});
    scheduler_.schedule(SimEvent{now + telemetry::retry_horizon(policy), NetCollect{job}});
  }

  void push_telemetry(SimTime now, const fusion::Evaluation& eval, fusion::Decision decision) {
    if (!config_.telemetry) return;
    telemetry::ChannelUpdate update;
    update.api_key = config_.api_key;
    update.alcohol = eval.flags.a;
    if (eval.bpm) update.bpm = sensors::div_round_half_up(eval.bpm->value, 1000);
    update.drowsy = eval.flags.d;
    update.decision = decision;

    const net::Address& to = *config_.telemetry;
    submit(now, "http", net::to_bytes(telemetry::encode_http_update(update, to.host)), to,
           config_.retry);
    const std::string fields = telemetry::encode_fields(update);
    submit(now, "mqtt",
           telemetry::encode_publish({config_.topic, net::Bytes(fields.begin(), fields.end())}),
           to, config_.retry);
  }

  void send_alert(SimTime now, const fusion::Evaluation& eval, fusion::Decision decision) {
    alert::AlertRecord record;
    record.seq = ++alert_seq_;
    record.ts = now;
    record.flags = eval.flags;
    record.breath_micro_mg_l = eval.breath ? eval.breath->value : -1;
    record.bpm_milli = eval.bpm ? eval.bpm->value : -1;
    record.decision = decision;
    ++summary_.alerts;

    const std::string line = alert::encode_alert(record);
    if (config_.app) {
      submit(now, "app", net::to_bytes(line), *config_.app, config_.retry);
    }
    const telemetry::RetryPolicy once{1, config_.retry.base_backoff};
    for (const auto& contact : config_.contacts.entries()) {
      submit(now, "contact:" + contact.label, net::to_bytes(line), contact.endpoint, once);
    }
  }

  const Scenario& scenario_;
  RunConfig config_;
  sim::Scheduler<SimEvent> scheduler_;
  fusion::Evaluator evaluator_;
  fusion::InterlockState interlock_;
  actuators::IgnitionRelay relay_;
  actuators::Alarm alarm_;
  std::optional<actuators::LcdFrame> lcd_;
  std::optional<sim::EyeLabel> camera_label_;
  bool shut_down_ = false;

  telemetry::NetWorker worker_;
  std::map<std::uint64_t, PendingJob> jobs_;
  std::uint64_t last_job_ = 0;
  std::uint64_t alert_seq_ = 0;

  std::mt19937_64 pulse_rng_;
  std::mt19937_64 breath_rng_;
  RunSummary summary_;
};

}  // namespace

RunSummary run(const Scenario& scenario, RunConfig config, net::Transport& transport) {
  config.finalize();
  Session session(scenario, std::move(config), transport);
  return session.run();
}

int merge_frame_labels(Scenario& scenario, std::string_view frame_label_text) {
  const sensors::FrameLabels labels = sensors::parse_frame_labels(frame_label_text);
  for (std::size_t i = 0; i < labels.labels.size(); ++i) {
    scenario.events.push_back(sim::ScenarioEvent{
        sensors::frame_time(static_cast<std::int64_t>(i), labels.fps), labels.labels[i]});
  }
  std::stable_sort(scenario.events.begin(), scenario.events.end(),
                   [](const auto& a, const auto& b) { return a.at < b.at; });
  if (!scenario.events.empty()) {
    scenario.duration = std::max(scenario.duration, scenario.events.back().at);
  }
  return labels.fps;
}

}  // namespace drunkguard::harness
