// Copyright 2026 The hullwalk Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hullwalk/cli_io.hpp"

int main(int argc, char** argv) { return hullwalk::io::dispatch(argc, argv); }
