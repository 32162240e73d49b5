// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SPIX_CLI_HPP
#define SPIX_CLI_HPP

namespace spix {

/// CLI entry point behind the `spix` binary. Returns the process exit
/// code: 0 on success, 1 when some benchmark rows failed, 2 on
/// configuration or input errors.
int cli_main(int argc, const char* const* argv);

}  // namespace spix

#endif  // SPIX_CLI_HPP
