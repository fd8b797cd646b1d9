#pragma once

#include "consensus_lab/balanced.hpp"
#include "consensus_lab/closeness.hpp"
#include "consensus_lab/consensus.hpp"
#include "consensus_lab/error.hpp"
#include "consensus_lab/harness/ballots.hpp"
#include "consensus_lab/harness/campaigns.hpp"
#include "consensus_lab/harness/profiles.hpp"
#include "consensus_lab/mahonian.hpp"
#include "consensus_lab/prefs.hpp"
#include "consensus_lab/rules.hpp"
