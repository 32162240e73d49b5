// Copyright (c) 2026 the spix authors.
// SPDX-License-Identifier: Apache-2.0

#include "spix/cli.hpp"

int main(int argc, char** argv) { return spix::cli_main(argc, argv); }
