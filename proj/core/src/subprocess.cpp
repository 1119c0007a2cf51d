#include "herd/subprocess.hpp"

#include <cerrno>
#include <chrono>
#include <cmath>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <map>

#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

namespace herd {

namespace {

double resolve_timeout(double configured) {
    if (const char* env = std::getenv("HERD_EVAL_TIMEOUT_SECS")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0.0) return v;
    }
    return configured;
}

}  // namespace

ExternalEvaluator::ExternalEvaluator(ExternalEvaluatorConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.command.empty()) throw std::invalid_argument("ExternalEvaluator: empty command");
    cfg_.timeout_secs = resolve_timeout(cfg_.timeout_secs);
    // A dying child must surface as a write error, not a SIGPIPE kill.
    std::signal(SIGPIPE, SIG_IGN);
}

ExternalEvaluator::~ExternalEvaluator() { shutdown(); }

void ExternalEvaluator::spawn() {
    int to_child[2], from_child[2];
    if (pipe(to_child) != 0) throw EvaluatorError("external evaluator: pipe() failed");
    if (pipe(from_child) != 0) {
        close(to_child[0]);
        close(to_child[1]);
        throw EvaluatorError("external evaluator: pipe() failed");
    }

    const int pid = fork();
    if (pid < 0) {
        close(to_child[0]);
        close(to_child[1]);
        close(from_child[0]);
        close(from_child[1]);
        throw EvaluatorError("external evaluator: fork() failed");
    }
    if (pid == 0) {
        dup2(to_child[0], STDIN_FILENO);
        dup2(from_child[1], STDOUT_FILENO);
        close(to_child[0]);
        close(to_child[1]);
        close(from_child[0]);
        close(from_child[1]);
        execl("/bin/sh", "sh", "-c", cfg_.command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    pid_ = pid;
    to_child_ = to_child[1];
    from_child_ = from_child[0];
    read_buf_.clear();
}

void ExternalEvaluator::shutdown() {
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
    to_child_ = from_child_ = -1;
    if (pid_ > 0) {
        int status = 0;
        waitpid(pid_, &status, 0);
        pid_ = -1;
    }
}

double ExternalEvaluator::evaluate(const EvalPoint& p) { return evaluate_batch({p})[0]; }

std::vector<double> ExternalEvaluator::evaluate_batch(const std::vector<EvalPoint>& pts) {
    if (pts.empty()) return {};
    return run_batch(pts, /*allow_restart=*/true);
}

std::vector<double> ExternalEvaluator::run_batch(const std::vector<EvalPoint>& pts,
                                                 bool allow_restart) {
    if (pid_ < 0) spawn();

    const long first_id = next_id_;
    next_id_ += static_cast<long>(pts.size());

    auto restart_or_throw = [&](const std::string& why) -> std::vector<double> {
        shutdown();
        if (!allow_restart)
            throw EvaluatorError("external evaluator: " + why + " (after restart)");
        next_id_ = first_id;  // child is stateless; reuse the ids
        return run_batch(pts, /*allow_restart=*/false);
    };

    // Pipeline every request before reading responses.
    std::string payload;
    for (size_t i = 0; i < pts.size(); ++i) {
        nlohmann::json req;
        req["id"] = first_id + static_cast<long>(i);
        req["design"] = nlohmann::json::parse(design_to_json(pts[i].design));
        payload += req.dump();
        payload += '\n';
    }
    size_t written = 0;
    while (written < payload.size()) {
        const ssize_t n = write(to_child_, payload.data() + written, payload.size() - written);
        if (n < 0) {
            if (errno == EINTR) continue;
            return restart_or_throw("child process is gone (write failed)");
        }
        written += static_cast<size_t>(n);
    }

    std::map<long, double> results;
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration<double>(cfg_.timeout_secs);

    while (results.size() < pts.size()) {
        // Pull one complete line out of the buffer if available.
        const size_t nl = read_buf_.find('\n');
        if (nl != std::string::npos) {
            const std::string line = read_buf_.substr(0, nl);
            read_buf_.erase(0, nl + 1);
            if (line.empty()) continue;

            nlohmann::json resp;
            try {
                resp = nlohmann::json::parse(line);
            } catch (const nlohmann::json::exception&) {
                throw EvaluatorError("external evaluator: malformed response line: " + line);
            }
            if (!resp.contains("id") || !resp["id"].is_number_integer())
                throw EvaluatorError("external evaluator: response without id: " + line);
            const long id = resp["id"].get<long>();
            if (id < first_id || id >= first_id + static_cast<long>(pts.size()))
                throw EvaluatorError("external evaluator: unexpected response id " +
                                     std::to_string(id));
            if (resp.contains("error"))
                throw EvaluatorError("external evaluator: request " + std::to_string(id) +
                                     " failed: " + resp["error"].get<std::string>());
            if (!resp.contains("fitness") || !resp["fitness"].is_number())
                throw EvaluatorError("external evaluator: response without fitness: " + line);
            results[id] = resp["fitness"].get<double>();
            // A response landed; give the next request a fresh timeout.
            deadline = std::chrono::steady_clock::now() +
                       std::chrono::duration<double>(cfg_.timeout_secs);
            continue;
        }

        const auto now = std::chrono::steady_clock::now();
        if (now >= deadline)
            throw EvaluatorError("external evaluator: timed out after " +
                                 std::to_string(cfg_.timeout_secs) + "s waiting for a response");
        const auto remaining =
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now);
        struct pollfd pfd = {from_child_, POLLIN, 0};
        const int pr = poll(&pfd, 1, static_cast<int>(remaining.count()) + 1);
        if (pr < 0) {
            if (errno == EINTR) continue;
            throw EvaluatorError("external evaluator: poll() failed");
        }
        if (pr == 0) continue;  // loop re-checks the deadline

        char chunk[4096];
        const ssize_t n = read(from_child_, chunk, sizeof(chunk));
        if (n < 0) {
            if (errno == EINTR) continue;
            return restart_or_throw("read from child failed");
        }
        if (n == 0) return restart_or_throw("child closed its output");
        read_buf_.append(chunk, static_cast<size_t>(n));
    }

    std::vector<double> out;
    out.reserve(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) out.push_back(results.at(first_id + static_cast<long>(i)));
    return out;
}

}  // namespace herd
