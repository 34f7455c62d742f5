"""
Console view
stdout carries primary results only; everything else goes to stderr
"""

import sys


class ConsoleView :
	"""
	Terminal output of the command-line tool

	Streams are injectable so tests can capture them.
	"""

	def __init__(self, out=None, err=None) :
		self.out = out if out is not None else sys.stdout
		self.err = err if err is not None else sys.stderr

	def show_result(self, text) :
		"""Print a primary result (decoded bits, verdicts, tables)"""
		print(text, file=self.out)

	def show_table(self, headers, rows) :
		"""
		Print an aligned text table

		Parameters:
			headers (list): column titles
			rows (list): one sequence of cell values per row
		"""
		cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
		widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
		for index, row in enumerate(cells) :
			self.show_result("  ".join(c.rjust(w) for c, w in zip(row, widths)))
			if index == 0 :
				self.show_result("  ".join('-' * w for w in widths))

	def show_error(self, error_type, message) :
		print(f"stegblocks: {error_type}: {message}", file=self.err)

	def show_warning(self, warning_type, message) :
		print(f"stegblocks: warning: {warning_type}: {message}", file=self.err)
