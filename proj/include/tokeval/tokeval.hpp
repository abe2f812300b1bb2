#pragma once

#include "tokeval/byte_level.hpp"
#include "tokeval/config.hpp"
#include "tokeval/corpus.hpp"
#include "tokeval/error.hpp"
#include "tokeval/format.hpp"
#include "tokeval/metrics.hpp"
#include "tokeval/pretokenize.hpp"
#include "tokeval/report.hpp"
#include "tokeval/stats.hpp"
#include "tokeval/svg.hpp"
#include "tokeval/tokenizer.hpp"
#include "tokeval/turkval.hpp"
#include "tokeval/utf8.hpp"
