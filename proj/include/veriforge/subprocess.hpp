#pragma once

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace veriforge {

struct ExecResult {
    int exit_code = -1;       // 128+signal when killed
    bool timed_out = false;
    bool spawn_failed = false;
    int spawn_errno = 0;
    std::string output;       // stdout and stderr, merged
    bool output_truncated = false;
    std::int64_t wall_ms = 0;

    bool tool_missing() const { return spawn_failed && (spawn_errno == ENOENT || spawn_errno == EACCES); }
};

// Runs argv with merged output capture and a hard wall-clock deadline. On
// overrun the whole process group is killed, so the call returns within the
// timeout plus a small drain window.
inline ExecResult run_process(const std::vector<std::string>& argv,
                              std::chrono::milliseconds timeout,
                              const std::filesystem::path& workdir = {},
                              std::size_t output_limit = 65536) {
    ExecResult result;
    if (argv.empty()) {
        result.spawn_failed = true;
        result.spawn_errno = EINVAL;
        return result;
    }

    int out_pipe[2];
    int err_pipe[2]; // carries the child's exec errno, closed on successful exec
    if (pipe(out_pipe) != 0) {
        result.spawn_failed = true;
        result.spawn_errno = errno;
        return result;
    }
    if (pipe2(err_pipe, O_CLOEXEC) != 0) {
        close(out_pipe[0]);
        close(out_pipe[1]);
        result.spawn_failed = true;
        result.spawn_errno = errno;
        return result;
    }

    auto start = std::chrono::steady_clock::now();
    pid_t pid = fork();
    if (pid < 0) {
        result.spawn_failed = true;
        result.spawn_errno = errno;
        close(out_pipe[0]); close(out_pipe[1]);
        close(err_pipe[0]); close(err_pipe[1]);
        return result;
    }

    if (pid == 0) {
        setpgid(0, 0);
        if (!workdir.empty() && chdir(workdir.c_str()) != 0) {
            int e = errno;
            ssize_t ignored = write(err_pipe[1], &e, sizeof(e));
            (void)ignored;
            _exit(127);
        }
        dup2(out_pipe[1], STDOUT_FILENO);
        dup2(out_pipe[1], STDERR_FILENO);
        close(out_pipe[0]); close(out_pipe[1]);
        close(err_pipe[0]);

        std::vector<char*> args;
        args.reserve(argv.size() + 1);
        for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
        args.push_back(nullptr);
        execvp(args[0], args.data());
        int e = errno;
        ssize_t ignored = write(err_pipe[1], &e, sizeof(e));
        (void)ignored;
        _exit(127);
    }

    close(out_pipe[1]);
    close(err_pipe[1]);

    // Blocks until exec succeeds (pipe closes empty) or fails (errno arrives).
    int child_errno = 0;
    ssize_t n = read(err_pipe[0], &child_errno, sizeof(child_errno));
    close(err_pipe[0]);
    if (n == static_cast<ssize_t>(sizeof(child_errno))) {
        result.spawn_failed = true;
        result.spawn_errno = child_errno;
        close(out_pipe[0]);
        waitpid(pid, nullptr, 0);
        result.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start).count();
        return result;
    }

    auto deadline = start + timeout;
    char buf[4096];
    bool open = true;
    while (open) {
        auto now = std::chrono::steady_clock::now();
        int wait_ms = result.timed_out
                          ? 100
                          : static_cast<int>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                                 deadline - now).count());
        if (!result.timed_out && wait_ms <= 0) {
            kill(-pid, SIGKILL);
            result.timed_out = true;
            continue;
        }
        struct pollfd pfd { out_pipe[0], POLLIN, 0 };
        int rc = poll(&pfd, 1, wait_ms);
        if (rc == 0) {
            if (!result.timed_out) {
                kill(-pid, SIGKILL);
                result.timed_out = true;
            }
            continue;
        }
        if (rc < 0) {
            if (errno == EINTR) continue;
            break;
        }
        ssize_t got = read(out_pipe[0], buf, sizeof(buf));
        if (got <= 0) {
            open = false;
        } else if (result.output.size() < output_limit) {
            std::size_t take = std::min(static_cast<std::size_t>(got),
                                        output_limit - result.output.size());
            result.output.append(buf, take);
            if (take < static_cast<std::size_t>(got)) result.output_truncated = true;
        } else {
            result.output_truncated = true;
        }
    }
    close(out_pipe[0]);

    int status = 0;
    waitpid(pid, &status, 0);
    if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
        result.exit_code = 128 + WTERMSIG(status);
    }
    result.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace veriforge
