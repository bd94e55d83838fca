#pragma once

#include <coroutine>
#include <exception>
#include <string>
#include <utility>

#include "lazycops/graph.hpp"

namespace lazycops {

// How a robber program ended.
struct Outcome {
  enum Kind { Done, Centre, Retreat, Blocked };
  Kind kind = Done;
  int face = -1;
  std::string why;

  static Outcome done() { return {}; }
  static Outcome centre(int f) { return {Centre, f, {}}; }
  static Outcome retreat() { return {Retreat, -1, {}}; }
  static Outcome blocked(std::string why) { return {Blocked, -1, std::move(why)}; }
  bool ok() const { return kind == Done || kind == Centre; }
};

inline std::string to_string(Outcome::Kind k) {
  switch (k) {
    case Outcome::Done: return "done";
    case Outcome::Centre: return "centre";
    case Outcome::Retreat: return "retreat";
    case Outcome::Blocked: return "blocked";
  }
  return "?";
}

// A resumable robber plan. `co_yield v` emits the robber's next vertex and
// suspends until the cops have replied; `co_await sub` runs a nested plan to
// completion and returns its Outcome; `co_return outcome` ends the plan.
class Program {
 public:
  struct promise_type;
  using handle = std::coroutine_handle<promise_type>;

  struct SubAwaiter {
    handle sub;
    handle parent{};
    bool await_ready() const noexcept { return false; }
    void await_suspend(handle h) noexcept {
      parent = h;
      h.promise().child = sub;
    }
    Outcome await_resume() { return std::move(parent.promise().child_result); }
  };

  struct promise_type {
    Vertex yielded = kNoVertex;
    Outcome result;
    Outcome child_result;
    handle child{};
    std::exception_ptr error;

    ~promise_type() {
      if (child) child.destroy();
    }
    Program get_return_object() { return Program(handle::from_promise(*this)); }
    std::suspend_always initial_suspend() noexcept { return {}; }
    std::suspend_always final_suspend() noexcept { return {}; }
    std::suspend_always yield_value(Vertex v) noexcept {
      yielded = v;
      return {};
    }
    void return_value(Outcome o) { result = std::move(o); }
    void unhandled_exception() { error = std::current_exception(); }
    SubAwaiter await_transform(Program p) { return SubAwaiter{p.release()}; }
  };

  Program() = default;
  explicit Program(handle h) : h_(h) {}
  Program(Program&& o) noexcept : h_(std::exchange(o.h_, {})) {}
  Program& operator=(Program&& o) noexcept {
    if (this != &o) {
      reset();
      h_ = std::exchange(o.h_, {});
    }
    return *this;
  }
  Program(const Program&) = delete;
  Program& operator=(const Program&) = delete;
  ~Program() { reset(); }

  handle release() { return std::exchange(h_, {}); }
  explicit operator bool() const { return static_cast<bool>(h_); }
  void reset() {
    if (h_) h_.destroy();
    h_ = {};
  }

 private:
  handle h_{};
};

// Drives a Program: each call to next() runs until the innermost active plan
// yields a move, or returns kNoVertex once the outermost plan has finished.
class Runner {
 public:
  Runner() = default;
  explicit Runner(Program p) : root_(p.release()) {}
  Runner(Runner&& o) noexcept
      : root_(std::exchange(o.root_, {})), result_(std::move(o.result_)), done_(o.done_) {}
  Runner& operator=(Runner&& o) noexcept {
    if (this != &o) {
      clear();
      root_ = std::exchange(o.root_, {});
      result_ = std::move(o.result_);
      done_ = o.done_;
    }
    return *this;
  }
  ~Runner() { clear(); }

  bool active() const { return root_ && !done_; }
  const Outcome& outcome() const { return result_; }

  Vertex next() {
    if (!active()) return kNoVertex;
    for (;;) {
      Program::handle h = root_, parent{};
      while (h.promise().child) {
        parent = h;
        h = h.promise().child;
      }
      h.resume();
      if (h.promise().error) {
        auto e = h.promise().error;
        done_ = true;
        std::rethrow_exception(e);
      }
      if (h.done()) {
        if (!parent) {
          result_ = std::move(h.promise().result);
          done_ = true;
          return kNoVertex;
        }
        parent.promise().child_result = std::move(h.promise().result);
        parent.promise().child = {};
        h.destroy();
        continue;
      }
      if (h.promise().child) continue;
      return h.promise().yielded;
    }
  }

  void clear() {
    if (root_) root_.destroy();
    root_ = {};
    done_ = false;
  }

 private:
  Program::handle root_{};
  Outcome result_;
  bool done_ = false;
};

}  // namespace lazycops
