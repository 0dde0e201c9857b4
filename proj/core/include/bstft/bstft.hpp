// Copyright 2026 The bstft Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bstft/config.hpp"
#include "bstft/errors.hpp"
#include "bstft/export.hpp"
#include "bstft/frontend.hpp"
#include "bstft/oracle.hpp"
#include "bstft/pipeline.hpp"
#include "bstft/presets.hpp"
#include "bstft/receiver.hpp"
#include "bstft/resolution.hpp"
#include "bstft/sbs.hpp"
#include "bstft/sigkit.hpp"
#include "bstft/spectrogram.hpp"
#include "bstft/trace_io.hpp"
