import os

#log files, one per command, under LOG_DIR
LOG_DIR_DEFAULT = os.path.join(os.path.dirname(__file__), '..', '..', 'logs')
TRAIN_LOG_FILE = 'train.log'
GENERATE_LOG_FILE = 'generate.log'
ENUMERATE_LOG_FILE = 'enumerate.log'
SCORE_LOG_FILE = 'score.log'
REPL_LOG_FILE = 'repl.log'
LOG_LEVEL_DEFAULT = 'INFO'

#pre-defined input values
BEAM_WIDTH_DEFAULT = 64
MAX_ITERATIONS_DEFAULT = 200
K_BEST_DEFAULT = 1
LAMBDA_DEFAULT = (0.5, 0.3, 0.15, 0.05)
DEDUPLICATE_DEFAULT = True
LENGTH_NORMALIZE_DEFAULT = False
ENUMERATE_MAX_PER_NODE_DEFAULT = 6
ENUMERATE_MAX_NODES_DEFAULT = 24
REPL_OPTIONAL_ATTRIBUTES_DEFAULT = ('num-flights',)
REPL_PROMPT = '> '

# Exit codes
EXIT_OK = 0
EXIT_USER_ERROR = 1
EXIT_GENERATION_FAILED = 2

# Error message constants
GRAMMAR_ERROR_MSG = "Invalid grammar: {}"
MODEL_ERROR_MSG = "Invalid model: {}"
WEIGHTS_ERROR_MSG = "Invalid interpolation weights: {}"
CONTEXT_ERROR_MSG = "Invalid dialog state: {}"
CONDITION_ERROR_MSG = "Invalid condition: {}"
INSTANTIATION_ERROR_MSG = "Cannot instantiate realization: {}"
FILE_ERROR_MSG = "Cannot access file: {}"
VALUE_ERROR_MSG = "Invalid input value: {}"
EMPTY_TEXT_MSG = "Text to score must contain at least one token."
GENERATION_FAILED_MSG = "Generation failed: {}"
UNEXPECTED_ERROR_MSG = "An unexpected error occurred: {}"
ENUMERATION_TRUNCATED_MSG = "warning: enumeration truncated by --max-per-node/--max-nodes"
TRAIN_SUMMARY_MSG = "vocabulary: {} tokens: {}"
REPL_UNKNOWN_COMMAND_MSG = "Unknown command: {} (expected set, system, turn, gen or quit)"
REPL_USAGE_MSG = "Usage: {}"
REPL_NOTHING_TO_SAY_MSG = "Generation failed: no attributes have been set."

# Logging error messages
LOG_GRAMMAR_ERROR = "GrammarError: {}"
LOG_MODEL_ERROR = "ModelError: {}"
LOG_WEIGHTS_ERROR = "WeightsError: {}"
LOG_CONTEXT_ERROR = "ContextError: {}"
LOG_CONDITION_ERROR = "ConditionSyntaxError: {}"
LOG_INSTANTIATION_ERROR = "InstantiationError: {}"
LOG_FILE_ERROR = "OSError: {}"
LOG_VALUE_ERROR = "ValueError: {}"
LOG_GENERATION_FAILED = "GenerationFailed: {}"
LOG_UNEXPECTED_ERROR = "Unexpected error: {}"
