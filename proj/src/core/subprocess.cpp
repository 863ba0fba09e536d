#include "subprocess.hpp"

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include "errors.hpp"

namespace mgs {

std::string resolve_binary(const std::string &binary) {
  if (binary.find('/') != std::string::npos)
    return access(binary.c_str(), X_OK) == 0 ? binary : "";
  const char *path = std::getenv("PATH");
  if (!path)
    return "";
  std::string dirs(path);
  std::size_t start = 0;
  while (start <= dirs.size()) {
    std::size_t end = dirs.find(':', start);
    if (end == std::string::npos)
      end = dirs.size();
    std::string dir = dirs.substr(start, end - start);
    if (!dir.empty()) {
      std::string full = dir + "/" + binary;
      if (access(full.c_str(), X_OK) == 0)
        return full;
    }
    start = end + 1;
  }
  return "";
}

ProcessResult run_process(const std::vector<std::string> &argv,
                          double timeout_seconds) {
  using clock = std::chrono::steady_clock;

  int out_pipe[2], err_pipe[2], exec_pipe[2];
  if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0 || pipe2(exec_pipe, O_CLOEXEC) != 0)
    throw InfrastructureError(std::string("pipe failed: ") +
                              std::strerror(errno));

  const auto start = clock::now();
  pid_t pid = fork();
  if (pid < 0)
    throw InfrastructureError(std::string("fork failed: ") +
                              std::strerror(errno));

  if (pid == 0) {
    setpgid(0, 0); // own process group so the timeout kill reaps children too
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(err_pipe[1], STDERR_FILENO);
    close(out_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[0]);
    close(err_pipe[1]);
    close(exec_pipe[0]);
    std::vector<char *> cargv;
    for (const auto &a : argv)
      cargv.push_back(const_cast<char *>(a.c_str()));
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    int err = errno;
    ssize_t ignored = write(exec_pipe[1], &err, sizeof err);
    (void)ignored;
    _exit(127);
  }

  close(out_pipe[1]);
  close(err_pipe[1]);
  close(exec_pipe[1]);
  setpgid(pid, pid); // mirror the child's setpgid so the group kill can't race

  ProcessResult res;
  bool killed = false;
  struct Stream {
    int fd;
    std::string *buf;
    bool open = true;
  } streams[2] = {{out_pipe[0], &res.out}, {err_pipe[0], &res.err}};

  auto elapsed = [&start]() {
    return std::chrono::duration<double>(clock::now() - start).count();
  };

  char chunk[4096];
  while (streams[0].open || streams[1].open) {
    double remaining = killed ? 0.5 - (elapsed() - timeout_seconds)
                              : timeout_seconds - elapsed();
    if (remaining <= 0) {
      if (!killed) {
        kill(-pid, SIGKILL);
        kill(pid, SIGKILL);
        killed = true;
        continue;
      }
      break; // grandchildren may be holding the pipes; stop draining
    }
    pollfd fds[2];
    nfds_t n = 0;
    for (auto &s : streams)
      if (s.open)
        fds[n++] = {s.fd, POLLIN, 0};
    int rc = poll(fds, n, static_cast<int>(remaining * 1000) + 1);
    if (rc < 0) {
      if (errno == EINTR)
        continue;
      break;
    }
    if (rc == 0)
      continue; // deadline handled at loop head
    for (nfds_t i = 0; i < n; ++i) {
      if (!(fds[i].revents & (POLLIN | POLLHUP | POLLERR)))
        continue;
      Stream &s = streams[fds[i].fd == out_pipe[0] ? 0 : 1];
      ssize_t got = read(s.fd, chunk, sizeof chunk);
      if (got > 0)
        s.buf->append(chunk, static_cast<std::size_t>(got));
      else
        s.open = false;
    }
  }
  close(out_pipe[0]);
  close(err_pipe[0]);

  if (!killed && elapsed() >= timeout_seconds) {
    kill(-pid, SIGKILL);
    kill(pid, SIGKILL);
    killed = true;
  }

  int status = 0;
  waitpid(pid, &status, 0);
  res.wall_seconds = elapsed();
  res.timed_out = killed;
  if (WIFEXITED(status))
    res.exit_code = WEXITSTATUS(status);
  else if (WIFSIGNALED(status))
    res.exit_code = 128 + WTERMSIG(status);

  int exec_errno = 0;
  if (read(exec_pipe[0], &exec_errno, sizeof exec_errno) ==
      sizeof exec_errno) {
    close(exec_pipe[0]);
    throw InfrastructureError("cannot execute '" + argv[0] +
                              "': " + std::strerror(exec_errno));
  }
  close(exec_pipe[0]);
  return res;
}

} // namespace mgs
