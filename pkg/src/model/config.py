"""
Channel configuration files
Flat key=value text, one setting per line, '#' comments
"""

import configparser
import logging
from dataclasses import fields

from model.channels import ChannelConfig, SctpModel, TcpModel
from model.errors import InvalidChannelConfig

logger = logging.getLogger(__name__)

CHANNELS = {'tcp' : TcpModel, 'sctp' : SctpModel}

_SECTION = 'channel'
_TRUE = {'1', 'true', 'yes', 'on'}
_FALSE = {'0', 'false', 'no', 'off'}


def _convert(name, kind, text) :
	text = text.strip()
	try :
		if kind is bool :
			lowered = text.lower()
			if lowered in _TRUE :
				return True
			if lowered in _FALSE :
				return False
			raise ValueError(text)
		if kind is float :
			return float(text)
		return int(text.replace('_', ''))
	except ValueError :
		raise InvalidChannelConfig(
			f"{name}: cannot read '{text}' as {kind.__name__}") from None


def parse_channel_config(text: str, channel: str) -> ChannelConfig :
	"""
	Build a channel model from key=value text

	Parameters:
		text (str): configuration text
		channel (str): 'tcp' or 'sctp'

	Returns:
		ChannelConfig: validated TcpModel or SctpModel; missing keys keep
			their defaults

	Raises:
		InvalidChannelConfig: unknown channel or key, bad value, or a
			violated invariant
	"""
	if channel not in CHANNELS :
		raise InvalidChannelConfig(
			f"channel must be one of {sorted(CHANNELS)}, got '{channel}'")
	model = CHANNELS[channel]
	kinds = {f.name : f.type for f in fields(model)}

	parser = configparser.ConfigParser(comment_prefixes=('#', ';'),
	                                   inline_comment_prefixes=('#',))
	try :
		parser.read_string(f"[{_SECTION}]\n{text}")
	except configparser.Error as e :
		raise InvalidChannelConfig(f"unreadable channel config: {e}") from None

	values = {}
	for name, raw in parser.items(_SECTION) :
		if name not in kinds :
			raise InvalidChannelConfig(
				f"unknown key '{name}' for the {channel} channel; expected one "
				f"of {sorted(kinds)}")
		values[name] = _convert(name, kinds[name], raw)

	config = model(**values)
	config.validate()
	logger.debug("channel config: %s", config)
	return config


def load_channel_config(filepath: str, channel: str) -> ChannelConfig :
	"""Read and parse a channel configuration file"""
	with open(filepath, 'r', encoding='utf-8') as f :
		return parse_channel_config(f.read(), channel)
