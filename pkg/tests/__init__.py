# Tests for percol
