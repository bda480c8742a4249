/*
 * Copyright (c) 2026, The webtab Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace webtab {

class LabelerServer;

struct CliHooks {
  // Called by serve-labeler once the socket is bound, before blocking.
  std::function<void(LabelerServer&, int port)> on_listen;
};

// Runs one invocation of the command line tool. args excludes the program
// name. Returns 0 on success, 1 for usage or configuration errors and 2 for
// data errors. Diagnostics go to err as one JSON object per line.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliHooks& hooks = {});

}  // namespace webtab
