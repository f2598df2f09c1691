#pragma once

#include <string>
#include <vector>

namespace descent0::cli {

enum class Status { Ok, Mismatch, UsageError };

struct CommandResult {
  std::string command;
  Status status = Status::Ok;
  std::string output;  // rendered payload in the requested format

  int exit_code() const {
    switch (status) {
      case Status::Ok: return 0;
      case Status::Mismatch: return 1;
      case Status::UsageError: return 2;
    }
    return 2;
  }
};

// argv without the program name, e.g. {"selmer", "--A", "17", ...}.
CommandResult run(const std::vector<std::string>& argv);

}  // namespace descent0::cli
