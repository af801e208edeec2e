"""toolchat: tool-augmented LLM chat over a multi-agent action platform."""

__version__ = "0.1.0"
