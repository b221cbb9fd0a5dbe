/// @file
/// @brief Umbrella header.

#ifndef MODESCORE_MODESCORE_HPP
#define MODESCORE_MODESCORE_HPP

#include "modescore/events.hpp"
#include "modescore/extractor.hpp"
#include "modescore/fixtures.hpp"
#include "modescore/preprocess.hpp"
#include "modescore/report.hpp"
#include "modescore/scorer.hpp"
#include "modescore/smf_reader.hpp"
#include "modescore/smf_writer.hpp"
#include "modescore/theory.hpp"

#endif  // MODESCORE_MODESCORE_HPP
